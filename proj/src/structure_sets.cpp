#include "wpolar/structure_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wpolar/fibration.hpp"

namespace wpolar {

std::string_view to_string(CommutantKind kind) noexcept {
    switch (kind) {
        case CommutantKind::Unitary: return "unitary";
        case CommutantKind::Hermitian: return "hermitian";
        case CommutantKind::Positive: return "positive";
        case CommutantKind::Reflection: return "reflection";
    }
    return "unknown";
}

std::string_view to_string(IntersectionKind kind) noexcept {
    switch (kind) {
        case IntersectionKind::UnitaryHermitian: return "unitary_hermitian";
        case IntersectionKind::UnitaryUnitary: return "unitary_unitary";
        case IntersectionKind::HermitianHermitian: return "hermitian_hermitian";
        case IntersectionKind::PositivePositive: return "positive_positive";
        case IntersectionKind::UnitaryPositive: return "unitary_positive";
    }
    return "unknown";
}

IntersectionKind parse_intersection_kind(std::string_view name) {
    for (auto kind : {IntersectionKind::UnitaryHermitian, IntersectionKind::UnitaryUnitary,
                      IntersectionKind::HermitianHermitian, IntersectionKind::PositivePositive,
                      IntersectionKind::UnitaryPositive}) {
        if (name == to_string(kind)) return kind;
    }
    throw Error(ErrorKind::BadParams, "kind", "unknown intersection kind '" + std::string(name) + "'");
}

bool in_commutant(const Matrix& c, const Matrix& d, const Tolerance& tol) {
    if (c.rows() != d.rows() || c.cols() != d.cols()) throw Error(ErrorKind::DimensionMismatch, "d");
    return op_norm(d * c - c * d) <= tol.bound(op_norm(c) * op_norm(d));
}

Matrix sample_commutant(const Matrix& c, CommutantKind kind, std::uint64_t seed, const Tolerance& tol) {
    const HermitianEigen eig = eig_hermitian(c, tol);
    const Eigen::Index n = c.rows();
    InstanceKind block_kind = InstanceKind::Unitary;
    switch (kind) {
        case CommutantKind::Unitary: block_kind = InstanceKind::Unitary; break;
        case CommutantKind::Hermitian: block_kind = InstanceKind::Hermitian; break;
        case CommutantKind::Positive: block_kind = InstanceKind::PositiveDefinite; break;
        case CommutantKind::Reflection: block_kind = InstanceKind::Reflection; break;
    }

    Matrix blocks = Matrix::Zero(n, n);
    std::uint64_t index = 0;
    for (const EigenCluster& cl : cluster_eigenvalues(eig.eigenvalues)) {
        blocks.block(cl.first, cl.first, cl.size, cl.size) =
            random_instance(block_kind, cl.size, mix_seed(seed, index++));
    }
    Matrix out = eig.basis * blocks * eig.basis.adjoint();
    if (kind != CommutantKind::Unitary) out = hermitian_part(out);
    return out;
}

GsReport gs_intersection_check(const Weight& w, const Matrix& b, const Tolerance& tol) {
    require_square(b, "b");
    if (b.rows() != w.dim()) throw Error(ErrorKind::DimensionMismatch, "b");
    if (min_singular_value(b) <= tol.atol) throw Error(ErrorKind::Singular, "b");

    GsReport r;
    const BasicReport basic = classify_basic(b, tol);
    const ClassVerdict verdict = classify_weighted(w, b, tol);
    r.residuals["a_unitary"] = verdict.residuals.at("a_unitary");
    r.membership = verdict.a_unitary && basic.hermitian;

    const bool commutes = in_commutant(w.a(), b, tol);
    r.residuals["commutator"] = op_norm(w.a() * b - b * w.a());
    r.commuting_reflection = basic.reflection && basic.unitary && basic.hermitian && commutes;

    const PolarFactors pf = polar(b, tol);
    const double lambda_dev = op_norm(pf.left_positive - identity(b.rows()));
    r.residuals["lambda_minus_identity"] = lambda_dev;
    const BasicReport rho = classify_basic(pf.unitary_part, tol);
    r.trivial_positive_part = lambda_dev <= tol.bound(1.0) && rho.reflection && rho.hermitian &&
                              in_commutant(w.a(), pf.unitary_part, tol);

    r.agree = r.membership == r.commuting_reflection && r.membership == r.trivial_positive_part;
    return r;
}

namespace {

bool check_pair(IntersectionKind kind, const ClassVerdict& va, const ClassVerdict& vb) {
    switch (kind) {
        case IntersectionKind::UnitaryHermitian: return va.a_unitary && vb.a_hermitian;
        case IntersectionKind::UnitaryUnitary: return va.a_unitary && vb.a_unitary;
        case IntersectionKind::HermitianHermitian: return va.a_hermitian && vb.a_hermitian;
        case IntersectionKind::PositivePositive: return va.a_positive && vb.a_positive;
        case IntersectionKind::UnitaryPositive: return va.a_unitary && vb.a_positive;
    }
    return false;
}

CommutantKind sample_kind_for(IntersectionKind kind) {
    switch (kind) {
        case IntersectionKind::UnitaryHermitian: return CommutantKind::Reflection;
        case IntersectionKind::UnitaryUnitary: return CommutantKind::Unitary;
        case IntersectionKind::HermitianHermitian: return CommutantKind::Hermitian;
        case IntersectionKind::PositivePositive: return CommutantKind::Positive;
        case IntersectionKind::UnitaryPositive: break;
    }
    return CommutantKind::Positive;
}

void record(IntersectionSample& s, const ClassVerdict& va, const ClassVerdict& vb) {
    for (const auto& [name, value] : va.residuals) s.residuals["a." + name] = value;
    for (const auto& [name, value] : vb.residuals) s.residuals["b." + name] = value;
}

}  // namespace

IntersectionReport intersection_report(const Matrix& a, const Matrix& b,
                                       const std::vector<IntersectionKind>& kinds,
                                       int samples_per_kind, std::uint64_t seed, const Tolerance& tol) {
    if (samples_per_kind < 0) throw Error(ErrorKind::BadParams, "samples_per_kind");
    const Weight wa = Weight::make(a, tol);
    const Weight wb = Weight::make(b, tol);
    if (wa.dim() != wb.dim()) throw Error(ErrorKind::DimensionMismatch, "b");
    const Eigen::Index n = wa.dim();

    IntersectionReport report;
    report.c = hermitian_part(wb.inv_sqrt_a() * wa.a() * wb.inv_sqrt_a());

    for (std::size_t k = 0; k < kinds.size(); ++k) {
        const IntersectionKind kind = kinds[k];
        const std::uint64_t kind_seed = mix_seed(seed, 1000 + static_cast<std::uint64_t>(kind));

        if (kind == IntersectionKind::UnitaryPositive) {
            // The only element is phi_b(1) = 1; probe both sides for anything else.
            IntersectionSample s{kind, identity(n), false, {}};
            const ClassVerdict va = classify_weighted(wa, s.element, tol);
            const ClassVerdict vb = classify_weighted(wb, s.element, tol);
            s.passed = check_pair(kind, va, vb);
            record(s, va, vb);
            report.samples.push_back(std::move(s));
            for (int i = 0; i < samples_per_kind; ++i) {
                const std::uint64_t probe_seed = mix_seed(kind_seed, static_cast<std::uint64_t>(i));
                const Matrix candidates[] = {
                    phi(wb, random_instance(InstanceKind::PositiveDefinite, n, probe_seed)),
                    phi(wa, random_instance(InstanceKind::Unitary, n, probe_seed)),
                };
                for (const Matrix& x : candidates) {
                    const bool both = check_pair(kind, classify_weighted(wa, x, tol),
                                                 classify_weighted(wb, x, tol));
                    if (both && op_norm(x - identity(n)) > 1e-8) report.unitary_positive_only_identity = false;
                }
            }
            continue;
        }

        for (int i = 0; i < samples_per_kind; ++i) {
            const Matrix inner = sample_commutant(report.c, sample_kind_for(kind),
                                                  mix_seed(kind_seed, static_cast<std::uint64_t>(i)), tol);
            IntersectionSample s{kind, phi(wb, inner), false, {}};
            const ClassVerdict va = classify_weighted(wa, s.element, tol);
            const ClassVerdict vb = classify_weighted(wb, s.element, tol);
            s.passed = check_pair(kind, va, vb);
            record(s, va, vb);
            report.samples.push_back(std::move(s));
        }
    }
    return report;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

UnionVerdict classify_union(const Matrix& x, const Tolerance& tol) {
    require_square(x, "x");
    if (min_singular_value(x) <= tol.atol) throw Error(ErrorKind::Singular, "x");
    const Eigen::Index n = x.rows();
    const double norm = op_norm(x);

    Eigen::ComplexEigenSolver<Matrix> ces(x, true);
    if (ces.info() != Eigen::Success) throw Error(ErrorKind::NumericalFailure, "x", "eigensolver failed");
    const Vector& lambda = ces.eigenvalues();

    UnionVerdict v;
    v.spectrum = lambda;

    // Group eigenvalues that agree to rounding level; only these are tested for
    // a deficient eigenspace. Nearby but distinct eigenvalues fall through to the
    // eigenbasis conditioning test below.
    const double same = 64.0 * kEps * std::max(1.0, norm);
    std::vector<int> group(static_cast<std::size_t>(n), -1);
    int groups = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (group[i] >= 0) continue;
        group[i] = groups;
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (group[j] < 0 && std::abs(lambda(j) - lambda(i)) <= same) group[j] = groups;
        ++groups;
    }

    Matrix basis(n, n);
    Eigen::Index col = 0;
    const double null_threshold = tol.bound(norm);
    for (int gidx = 0; gidx < groups; ++gidx) {
        std::vector<Eigen::Index> members;
        for (Eigen::Index i = 0; i < n; ++i)
            if (group[i] == gidx) members.push_back(i);
        const auto k = static_cast<Eigen::Index>(members.size());
        if (k == 1) {
            basis.col(col++) = ces.eigenvectors().col(members[0]).normalized();
            continue;
        }
        Complex mean{0.0, 0.0};
        for (Eigen::Index i : members) mean += lambda(i);
        mean /= static_cast<double>(k);
        Eigen::JacobiSVD<Matrix> svd(x - mean * identity(n), Eigen::ComputeFullV);
        const RealVector& s = svd.singularValues();
        const Eigen::Index nullity = (s.array() <= null_threshold).count();
        v.residuals["cluster_" + std::to_string(gidx) + "_nullity_gap"] = s(n - k);
        if (nullity < k) {
            v.defective = true;
            break;
        }
        basis.block(0, col, n, k) = svd.matrixV().rightCols(k);
        col += k;
    }

    if (v.defective) {
        v.in_union_unitary = v.in_union_positive = v.in_union_hermitian = false;
        return v;
    }

    const double kappa_v = condition_number(basis);
    v.residuals["eigenbasis_condition"] = kappa_v;
    if (!(kappa_v <= 1.0 / (10.0 * tol.rtol))) return v;  // undecidable at this tolerance
    v.diag_basis = basis;

    const double spectral_tol = tol.rtol * std::max(1.0, norm) + 16.0 * kappa_v * kEps * norm;
    double max_modulus_dev = 0.0;
    double max_imag = 0.0;
    double min_real = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
        max_modulus_dev = std::max(max_modulus_dev, std::abs(std::abs(lambda(i)) - 1.0));
        max_imag = std::max(max_imag, std::abs(lambda(i).imag()));
        min_real = std::min(min_real, lambda(i).real());
    }
    v.residuals["max_modulus_deviation"] = max_modulus_dev;
    v.residuals["max_imag"] = max_imag;
    v.in_union_unitary = max_modulus_dev <= spectral_tol;
    v.in_union_hermitian = max_imag <= spectral_tol;
    v.in_union_positive = *v.in_union_hermitian && min_real > spectral_tol;

    if (*v.in_union_unitary || *v.in_union_hermitian) {
        const Matrix gram = basis * basis.adjoint();
        Matrix witness = hermitian_part(gram.llt().solve(identity(n)));
        witness /= op_norm(witness);
        const Weight w = Weight::make(witness, tol);
        const ClassVerdict cv = classify_weighted(w, x, tol);
        v.residuals["witness_a_unitary"] = cv.residuals.at("a_unitary");
        v.residuals["witness_a_hermitian"] = cv.residuals.at("a_hermitian");
        v.witness_verified = (!*v.in_union_unitary || cv.a_unitary) &&
                             (!*v.in_union_hermitian || cv.a_hermitian) &&
                             (!*v.in_union_positive || cv.a_positive);
        v.witness_weight = std::move(witness);
    }
    return v;
}

}  // namespace wpolar
