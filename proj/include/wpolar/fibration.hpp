#pragma once

#include "wpolar/core_linalg.hpp"
#include "wpolar/weighted_calculus.hpp"

namespace wpolar {

/// g = R V = V R' with V in U_a and R, R' in G+_a.
struct WeightedPolarFactors {
    Matrix a_unitary_part;
    Matrix a_positive_left;
    Matrix a_positive_right;
};

/// Unitary part of the polar decomposition.
Matrix pi(const Matrix& g, const Tolerance& tol = {});
/// (g g*)^{1/2}
Matrix pi_plus(const Matrix& g, const Tolerance& tol = {});
/// (g* g)^{1/2}
Matrix pi_plus_right(const Matrix& g, const Tolerance& tol = {});

/// Polar decomposition relative to <.,.>_a, computed as phi_a of the classical
/// factors of a^{1/2} g a^{-1/2}.
WeightedPolarFactors weighted_polar(const Weight& w, const Matrix& g, const Tolerance& tol = {});

/// The single point where the fibre G+ u meets U_a:
///   a^{-1/2} (a^{1/2} u a u^{-1} a^{1/2})^{1/2} a^{-1/2} u.
/// This is the inverse of pi restricted to U_a.
Matrix alpha(const Weight& w, const Matrix& u, const Tolerance& tol = {});

/// alpha restricted to orthogonal reflections; the image lies in Q ∩ U_a.
Matrix lift_reflection(const Weight& w, const Matrix& rho, const Tolerance& tol = {});

/// Inverse of pi_plus restricted to G+_a: mu -> a^{-1} pi_plus(a mu).
Matrix inv_positive_restriction(const Weight& w, const Matrix& mu, const Tolerance& tol = {});

}  // namespace wpolar
