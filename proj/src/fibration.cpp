#include "wpolar/fibration.hpp"

#include <cmath>

namespace wpolar {

Matrix pi(const Matrix& g, const Tolerance& tol) { return polar(g, tol).unitary_part; }

Matrix pi_plus(const Matrix& g, const Tolerance& tol) { return polar(g, tol).left_positive; }

Matrix pi_plus_right(const Matrix& g, const Tolerance& tol) { return polar(g, tol).right_positive; }

WeightedPolarFactors weighted_polar(const Weight& w, const Matrix& g, const Tolerance& tol) {
    const PolarFactors classical = polar(phi_inv(w, g), tol);
    return {
        phi(w, classical.unitary_part),
        phi(w, classical.left_positive),
        phi(w, classical.right_positive),
    };
}

Matrix alpha(const Weight& w, const Matrix& u, const Tolerance& tol) {
    require_square(u, "u");
    if (u.rows() != w.dim()) throw Error(ErrorKind::DimensionMismatch, "u");
    const double unitarity = op_norm(u.adjoint() * u - identity(u.rows()));
    if (unitarity > tol.bound(1.0)) {
        throw Error(ErrorKind::NotUnitary, "u", "||u* u - 1|| = " + std::to_string(unitarity));
    }

    // a^{1/2} u a u^{-1} a^{1/2} = y y* with y = a^{1/2} u a^{1/2}; Hermitian PD exactly.
    const Matrix y = w.sqrt_a() * u * w.sqrt_a();
    const Matrix inner = y * y.adjoint();
    const double inner_norm = op_norm(inner);
    const double asym = op_norm(inner - inner.adjoint());
    if (asym > tol.bound(inner_norm)) {
        throw Error(ErrorKind::NumericalFailure, "alpha", "inner product lost Hermitian symmetry");
    }
    const HermitianEigen eig = eig_hermitian(hermitian_part(inner), tol);
    if (eig.eigenvalues(0) <= tol.atol) {
        throw Error(ErrorKind::NumericalFailure, "alpha", "inner factor is not positive definite");
    }
    const Matrix root = apply_spectral(eig, [](double t) { return std::sqrt(t); });
    const Matrix lambda = hermitian_part(w.inv_sqrt_a() * root * w.inv_sqrt_a());
    return lambda * u;
}

Matrix lift_reflection(const Weight& w, const Matrix& rho, const Tolerance& tol) {
    require_square(rho, "rho");
    const BasicReport r = classify_basic(rho, tol);
    if (!(r.hermitian && r.unitary && r.reflection)) {
        throw Error(ErrorKind::NotReflection, "rho", "expected rho = rho* = rho^{-1}");
    }
    return alpha(w, rho, tol);
}

Matrix inv_positive_restriction(const Weight& w, const Matrix& mu, const Tolerance& tol) {
    require_pd(mu, "mu", tol);
    if (mu.rows() != w.dim()) throw Error(ErrorKind::DimensionMismatch, "mu");
    return w.inv_a() * pi_plus(w.a() * mu, tol);
}

}  // namespace wpolar
