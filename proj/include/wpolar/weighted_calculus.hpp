#pragma once

#include <map>
#include <string>

#include "wpolar/core_linalg.hpp"

namespace wpolar {

/// A positive definite weight a, defining <x, y>_a = <a x, y>.
/// Immutable once built; the roots and inverse are computed from one eigendecomposition.
class Weight {
public:
    static Weight make(const Matrix& a, const Tolerance& tol = {});
    static Weight identity(Eigen::Index dim);

    const Matrix& a() const noexcept { return a_; }
    const Matrix& sqrt_a() const noexcept { return sqrt_a_; }
    const Matrix& inv_sqrt_a() const noexcept { return inv_sqrt_a_; }
    const Matrix& inv_a() const noexcept { return inv_a_; }
    double kappa() const noexcept { return kappa_; }
    Eigen::Index dim() const noexcept { return a_.rows(); }

private:
    Weight() = default;

    Matrix a_;
    Matrix sqrt_a_;
    Matrix inv_sqrt_a_;
    Matrix inv_a_;
    double kappa_ = 1.0;
};

inline Weight make_weight(const Matrix& a, const Tolerance& tol = {}) { return Weight::make(a, tol); }

struct ClassVerdict {
    bool a_unitary = false;
    bool a_hermitian = false;
    bool a_positive = false;
    std::map<std::string, double> residuals;
    Vector spectrum;
};

struct WeightedProjection {
    Matrix q;
    Matrix reflection;   // 2q - 1
    Matrix range_basis;  // n x k
};

/// x^{#a} = a^{-1} x* a
Matrix sharp_adjoint(const Weight& w, const Matrix& x);

Complex weighted_inner(const Weight& w, const Vector& xi, const Vector& eta);
double weighted_vector_norm(const Weight& w, const Vector& xi);
/// Operator norm induced by <.,.>_a, i.e. ||a^{1/2} x a^{-1/2}||.
double weighted_op_norm(const Weight& w, const Matrix& x);

/// phi_a(b) = a^{-1/2} b a^{1/2}: carries (*, U, Gs, G+) onto (#a, U_a, Gs_a, G+_a).
Matrix phi(const Weight& w, const Matrix& b);
Matrix phi_inv(const Weight& w, const Matrix& b);

/// Decides membership in U_a, Gs_a and G+_a. Thresholds are rtol scaled by kappa(a)
/// (and by ||g|| for the Hermitian test); the raw residuals are reported alongside.
ClassVerdict classify_weighted(const Weight& w, const Matrix& g, const Tolerance& tol = {});

/// a-orthogonal projection onto span(range_basis): q = M (M* a M)^{-1} M* a.
WeightedProjection a_orthogonal_projection(const Weight& w, const Matrix& range_basis,
                                           const Tolerance& tol = {});

}  // namespace wpolar
