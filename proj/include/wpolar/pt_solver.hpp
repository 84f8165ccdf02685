#pragma once

#include <optional>
#include <vector>

#include "wpolar/core_linalg.hpp"

namespace wpolar {

inline constexpr std::size_t kDefaultEnumerationCap = 1024;

struct EigenBlock {
    double eigenvalue = 0.0;
    int multiplicity = 0;
};

/// All solutions of x a x = b for positive definite a, b:
///   { a^{-1/2} m e a^{-1/2} : e^2 = 1, e m = m e },  m = (a^{1/2} b a^{1/2})^{1/2}.
/// Enumeration fixes the eigenbasis of m and flips the sign of each eigenvector, so
/// pattern k has sign -1 on eigenvector j iff bit (n-1-j) of k is set. Pattern 0 is
/// the positive solution. When m has a repeated eigenvalue the family is a continuum
/// and only these basis-aligned representatives are listed.
struct SolutionFamily {
    Matrix positive_solution;
    Matrix m;
    Matrix m_basis;  // eigenvectors of m, ascending eigenvalues
    std::vector<EigenBlock> eigenspace_blocks;
    bool multiplicity_warning = false;
    std::optional<std::vector<Matrix>> enumerated;
    double max_residual = 0.0;  // max ||x a x - b|| / ||b|| over enumerated members
};

/// The unique positive definite T with T h T = k:
///   T = h^{-1/2} (h^{1/2} k h^{1/2})^{1/2} h^{-1/2}.
Matrix solve_pt(const Matrix& h, const Matrix& k, const Tolerance& tol = {});

SolutionFamily all_solutions(const Matrix& a, const Matrix& b, bool enumerate = false,
                             std::size_t cap = kDefaultEnumerationCap, const Tolerance& tol = {});

/// The unique positive definite x with a x b unitary (x solves x a^2 x = b^{-2}).
Matrix unique_positive_middle(const Matrix& a, const Matrix& b, const Tolerance& tol = {});

/// theta(a, b) = a x b with x = unique_positive_middle(a, b); always unitary.
Matrix theta(const Matrix& a, const Matrix& b, const Tolerance& tol = {});

/// The unique unitary u with a lam u positive definite.
Matrix unique_unitary_completion(const Matrix& a, const Matrix& lam, const Tolerance& tol = {});

}  // namespace wpolar
