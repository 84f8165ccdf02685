#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wpolar/core_linalg.hpp"
#include "wpolar/weighted_calculus.hpp"

namespace wpolar {

enum class CommutantKind { Unitary, Hermitian, Positive, Reflection };

std::string_view to_string(CommutantKind kind) noexcept;

/// The intersections covered by the reduction c = b^{-1/2} a b^{-1/2}.
enum class IntersectionKind {
    UnitaryHermitian,    // U_a ∩ Gs_b = phi_b(P(A_c))
    UnitaryUnitary,      // U_a ∩ U_b  = phi_b(U(A_c))
    HermitianHermitian,  // Gs_a ∩ Gs_b = phi_b(Gs(A_c))
    PositivePositive,    // G+_a ∩ G+_b = phi_b(G+(A_c))
    UnitaryPositive,     // U_a ∩ G+_b = {1}
};

std::string_view to_string(IntersectionKind kind) noexcept;
IntersectionKind parse_intersection_kind(std::string_view name);

struct GsReport {
    bool membership = false;            // b ∈ U_a ∩ Gs
    bool commuting_reflection = false;  // b ∈ P and ab = ba
    bool trivial_positive_part = false; // polar b = lambda rho with lambda = 1, rho ∈ P, a rho = rho a
    bool agree = false;
    std::map<std::string, double> residuals;
};

struct IntersectionSample {
    IntersectionKind kind;
    Matrix element;
    bool passed = false;
    std::map<std::string, double> residuals;
};

struct IntersectionReport {
    Matrix c;
    std::vector<IntersectionSample> samples;
    /// For UnitaryPositive: every probe accepted by both classes is within 1e-8 of I.
    bool unitary_positive_only_identity = true;
};

/// Flags are empty when the eigenbasis is too ill-conditioned to decide at tol.
struct UnionVerdict {
    std::optional<bool> in_union_unitary;
    std::optional<bool> in_union_positive;
    std::optional<bool> in_union_hermitian;
    bool defective = false;
    std::optional<Matrix> witness_weight;
    std::optional<Matrix> diag_basis;
    bool witness_verified = false;
    Vector spectrum;
    std::map<std::string, double> residuals;

    bool decided() const noexcept { return in_union_unitary.has_value(); }
};

bool in_commutant(const Matrix& c, const Matrix& d, const Tolerance& tol = {});

/// Random element of the requested class commuting with the Hermitian c, assembled
/// block by block in the clustered eigenbasis of c.
Matrix sample_commutant(const Matrix& c, CommutantKind kind, std::uint64_t seed,
                        const Tolerance& tol = {});

/// Decides U_a ∩ Gs = {rho ∈ P : a rho = rho a} along three independent routes.
GsReport gs_intersection_check(const Weight& w, const Matrix& b, const Tolerance& tol = {});

IntersectionReport intersection_report(const Matrix& a, const Matrix& b,
                                       const std::vector<IntersectionKind>& kinds,
                                       int samples_per_kind, std::uint64_t seed,
                                       const Tolerance& tol = {});

/// Membership in the unions over all weights of U_a, G+_a and Gs_a, i.e. similarity
/// to a unitary, to a positive definite and to a Hermitian matrix.
UnionVerdict classify_union(const Matrix& x, const Tolerance& tol = {});

}  // namespace wpolar
