#include "wpolar/pt_solver.hpp"

#include <cmath>

namespace wpolar {

namespace {

void require_same_dim(const Matrix& x, const Matrix& y, const char* subject) {
    if (x.rows() != y.rows()) {
        throw Error(ErrorKind::DimensionMismatch, subject, "operands differ in dimension");
    }
}

}  // namespace

Matrix solve_pt(const Matrix& h, const Matrix& k, const Tolerance& tol) {
    const HermitianEigen he = require_pd(h, "h", tol);
    require_pd(k, "k", tol);
    require_same_dim(h, k, "k");

    const Matrix h_sqrt = apply_spectral(he, [](double t) { return std::sqrt(t); });
    const Matrix h_isqrt = apply_spectral(he, [](double t) { return 1.0 / std::sqrt(t); });
    const Matrix inner = hermitian_part(h_sqrt * k * h_sqrt);
    const Matrix root = apply_spectral(require_pd(inner, "h^{1/2} k h^{1/2}", tol),
                                       [](double t) { return std::sqrt(t); });
    return hermitian_part(h_isqrt * root * h_isqrt);
}

SolutionFamily all_solutions(const Matrix& a, const Matrix& b, bool enumerate, std::size_t cap,
                             const Tolerance& tol) {
    const HermitianEigen ae = require_pd(a, "a", tol);
    require_pd(b, "b", tol);
    require_same_dim(a, b, "b");
    const Eigen::Index n = a.rows();

    const Matrix a_sqrt = apply_spectral(ae, [](double t) { return std::sqrt(t); });
    const Matrix a_isqrt = apply_spectral(ae, [](double t) { return 1.0 / std::sqrt(t); });
    // m shares its eigenbasis with a^{1/2} b a^{1/2}; square roots of the eigenvalues
    // keep the ascending order.
    HermitianEigen me = require_pd(hermitian_part(a_sqrt * b * a_sqrt), "a^{1/2} b a^{1/2}", tol);
    me.eigenvalues = me.eigenvalues.cwiseSqrt();

    SolutionFamily fam;
    fam.m = apply_spectral(me, [](double t) { return t; });
    fam.m_basis = me.basis;
    fam.positive_solution = hermitian_part(a_isqrt * fam.m * a_isqrt);
    for (const EigenCluster& c : cluster_eigenvalues(me.eigenvalues)) {
        fam.eigenspace_blocks.push_back({c.value, static_cast<int>(c.size)});
        if (c.size > 1) fam.multiplicity_warning = true;
    }

    if (!enumerate) return fam;

    if (n >= 63 || (std::size_t{1} << n) > cap) {
        throw Error(ErrorKind::EnumerationOverflow, "all_solutions",
                    "2^" + std::to_string(n) + " sign patterns exceed cap " + std::to_string(cap));
    }
    const std::size_t count = std::size_t{1} << n;
    const Matrix left = a_isqrt * me.basis;  // a^{-1/2} V
    const double b_norm = op_norm(b);
    std::vector<Matrix> members;
    members.reserve(count);
    for (std::size_t pattern = 0; pattern < count; ++pattern) {
        Vector signed_mu(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            const bool flip = (pattern >> (n - 1 - j)) & 1U;
            signed_mu(j) = flip ? -me.eigenvalues(j) : me.eigenvalues(j);
        }
        Matrix x = hermitian_part(left * signed_mu.asDiagonal() * left.adjoint());
        fam.max_residual = std::max(fam.max_residual, op_norm(x * a * x - b) / b_norm);
        members.push_back(std::move(x));
    }
    fam.enumerated = std::move(members);
    return fam;
}

Matrix unique_positive_middle(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    const HermitianEigen ae = require_pd(a, "a", tol);
    const HermitianEigen be = require_pd(b, "b", tol);
    require_same_dim(a, b, "b");
    // x = a^{-1} (a b^{-2} a)^{1/2} a^{-1}, rewritten as a^{-1} pi(a b^{-1}) b^{-1} so
    // that a x b is unitary up to rounding in the products
    const Matrix a_inv = apply_spectral(ae, [](double t) { return 1.0 / t; });
    const Matrix b_inv = apply_spectral(be, [](double t) { return 1.0 / t; });
    const Matrix w = polar(a * b_inv, tol).unitary_part;
    return hermitian_part(a_inv * w * b_inv);
}

Matrix theta(const Matrix& a, const Matrix& b, const Tolerance& tol) {
    return a * unique_positive_middle(a, b, tol) * b;
}

Matrix unique_unitary_completion(const Matrix& a, const Matrix& lam, const Tolerance& tol) {
    require_pd(a, "a", tol);
    require_pd(lam, "lam", tol);
    require_same_dim(a, lam, "lam");
    // a lam = p w  =>  a lam w* = p
    return polar(a * lam, tol).unitary_part.adjoint();
}

}  // namespace wpolar
