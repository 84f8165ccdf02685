#include "wpolar/weighted_calculus.hpp"

#include <cmath>

namespace wpolar {

Weight Weight::make(const Matrix& a, const Tolerance& tol) {
    const HermitianEigen eig = require_pd(a, "a", tol);
    Weight w;
    w.a_ = hermitian_part(a);
    w.sqrt_a_ = apply_spectral(eig, [](double t) { return std::sqrt(t); });
    w.inv_sqrt_a_ = apply_spectral(eig, [](double t) { return 1.0 / std::sqrt(t); });
    w.inv_a_ = apply_spectral(eig, [](double t) { return 1.0 / t; });
    w.kappa_ = eig.eigenvalues(eig.eigenvalues.size() - 1) / eig.eigenvalues(0);
    return w;
}

Weight Weight::identity(Eigen::Index dim) {
    Weight w;
    w.a_ = wpolar::identity(dim);
    w.sqrt_a_ = w.a_;
    w.inv_sqrt_a_ = w.a_;
    w.inv_a_ = w.a_;
    w.kappa_ = 1.0;
    return w;
}

namespace {

void require_dim(const Weight& w, const Matrix& x, const char* subject) {
    if (x.rows() != w.dim() || x.cols() != w.dim()) {
        throw Error(ErrorKind::DimensionMismatch, subject,
                    "expected " + std::to_string(w.dim()) + "x" + std::to_string(w.dim()));
    }
}

}  // namespace

Matrix sharp_adjoint(const Weight& w, const Matrix& x) {
    require_dim(w, x, "x");
    return w.inv_a() * x.adjoint() * w.a();
}

Complex weighted_inner(const Weight& w, const Vector& xi, const Vector& eta) {
    if (xi.size() != w.dim() || eta.size() != w.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "vector", "length must equal weight dimension");
    }
    // <a xi, eta>, linear in the first slot
    return eta.dot(w.a() * xi);
}

double weighted_vector_norm(const Weight& w, const Vector& xi) {
    return std::sqrt(std::max(0.0, weighted_inner(w, xi, xi).real()));
}

double weighted_op_norm(const Weight& w, const Matrix& x) {
    require_dim(w, x, "x");
    return op_norm(w.sqrt_a() * x * w.inv_sqrt_a());
}

Matrix phi(const Weight& w, const Matrix& b) {
    require_dim(w, b, "b");
    return w.inv_sqrt_a() * b * w.sqrt_a();
}

Matrix phi_inv(const Weight& w, const Matrix& b) {
    require_dim(w, b, "b");
    return w.sqrt_a() * b * w.inv_sqrt_a();
}

ClassVerdict classify_weighted(const Weight& w, const Matrix& g, const Tolerance& tol) {
    require_dim(w, g, "g");
    if (!g.allFinite()) throw Error(ErrorKind::DomainError, "g", "non-finite entry");
    if (min_singular_value(g) <= tol.atol) throw Error(ErrorKind::Singular, "g");

    const double kappa = w.kappa();
    const double norm = op_norm(g);
    const Matrix sharp = sharp_adjoint(w, g);

    ClassVerdict v;
    v.residuals["a_unitary"] = op_norm(sharp * g - identity(w.dim()));
    v.residuals["a_hermitian"] = op_norm(sharp - g);
    v.a_unitary = v.residuals["a_unitary"] <= tol.bound(kappa);
    v.a_hermitian = v.residuals["a_hermitian"] <= tol.bound(kappa * norm);

    Eigen::ComplexEigenSolver<Matrix> ces(g, false);
    v.spectrum = ces.eigenvalues();

    // g is a-Hermitian iff a^{1/2} g a^{-1/2} is Hermitian; both share the spectrum.
    Eigen::SelfAdjointEigenSolver<Matrix> hes(hermitian_part(phi_inv(w, g)), Eigen::EigenvaluesOnly);
    const double min_eig = hes.eigenvalues()(0);
    v.residuals["min_eigenvalue"] = min_eig;
    v.a_positive = v.a_hermitian && min_eig > tol.atol;
    return v;
}

WeightedProjection a_orthogonal_projection(const Weight& w, const Matrix& range_basis,
                                           const Tolerance& tol) {
    if (range_basis.rows() != w.dim() || range_basis.cols() < 1 || range_basis.cols() > w.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "range_basis",
                    "expected n x k with 1 <= k <= n = " + std::to_string(w.dim()));
    }
    Eigen::JacobiSVD<Matrix> svd(range_basis);
    const RealVector& s = svd.singularValues();
    if (s(s.size() - 1) <= tol.atol * std::max(1.0, s(0))) {
        throw Error(ErrorKind::RankDeficient, "range_basis",
                    "minimum singular value " + std::to_string(s(s.size() - 1)));
    }
    const Matrix ma = range_basis.adjoint() * w.a();  // M* a
    const Matrix gram = hermitian_part(ma * range_basis);
    WeightedProjection out;
    out.q = range_basis * gram.llt().solve(ma);
    out.reflection = 2.0 * out.q - identity(w.dim());
    out.range_basis = range_basis;
    return out;
}

}  // namespace wpolar
