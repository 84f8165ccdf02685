#include "wpolar/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iomanip>
#include <sstream>

#include "wpolar/fibration.hpp"
#include "wpolar/pt_solver.hpp"
#include "wpolar/structure_sets.hpp"
#include "wpolar/weighted_calculus.hpp"

namespace wpolar::verify {

namespace {

/// Checks and inputs collected while one trial runs.
class Trial {
public:
    Trial(std::uint64_t seed, Eigen::Index dim, const Options& opt) : seed_(seed), dim_(dim), opt_(opt) {}

    std::uint64_t seed() const { return seed_; }
    Eigen::Index dim() const { return dim_; }
    const Tolerance& tol() const { return opt_.tol; }
    double rtol() const { return opt_.tol.rtol; }
    double cond() const { return opt_.cond_bound; }

    /// Independent sub-seed for the i-th random input of this trial.
    std::uint64_t sub(std::uint64_t i) const { return mix_seed(seed_, i); }

    Matrix input(const Matrix& m) {
        digest(m);
        return m;
    }
    Matrix random(InstanceKind kind, std::uint64_t i) { return input(random_instance(kind, dim_, sub(i), cond())); }

    void check(const std::string& name, double value, double threshold) {
        values_[name] = std::max(values_.count(name) ? values_[name] : 0.0, value);
        if (!(value <= threshold)) failed_ = true;
    }
    /// A boolean expectation, recorded as 0 (held) or 1 (violated).
    void expect(const std::string& name, bool ok) { check(name, ok ? 0.0 : 1.0, 0.0); }
    /// Counts violations of an expectation across a loop.
    void count(const std::string& name, bool ok) {
        values_[name] += ok ? 0.0 : 1.0;
        if (!ok) failed_ = true;
    }
    void note(const std::string& name, double value) {
        experiments_[name] = std::max(experiments_.count(name) ? experiments_[name] : 0.0, value);
    }

    bool failed() const { return failed_; }
    const std::map<std::string, double>& values() const { return values_; }
    const std::map<std::string, double>& experiments() const { return experiments_; }

    std::string digest_hex() const {
        std::ostringstream os;
        os << std::hex << std::setw(16) << std::setfill('0') << hash_;
        return os.str();
    }

private:
    void digest(const Matrix& m) {
        // FNV-1a over the raw entries
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            for (Eigen::Index i = 0; i < m.rows(); ++i) {
                const double parts[2] = {m(i, j).real(), m(i, j).imag()};
                unsigned char bytes[sizeof parts];
                std::memcpy(bytes, parts, sizeof parts);
                for (unsigned char b : bytes) {
                    hash_ ^= b;
                    hash_ *= 0x100000001b3ULL;
                }
            }
        }
    }

    std::uint64_t seed_;
    Eigen::Index dim_;
    const Options& opt_;
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
    bool failed_ = false;
    std::map<std::string, double> values_;
    std::map<std::string, double> experiments_;
};

double rel(const Matrix& diff, const Matrix& ref) { return op_norm(diff) / std::max(op_norm(ref), 1e-300); }

Matrix eye(Eigen::Index n) { return identity(n); }

double min_eig(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// --- suites ------------------------------------------------------------------

void core_suite(Trial& t) {
    const Eigen::Index n = t.dim();
    const Matrix p = t.random(InstanceKind::PositiveDefinite, 0);
    const Matrix h = t.random(InstanceKind::Hermitian, 1);
    const Matrix g = t.random(InstanceKind::GeneralInvertible, 2);
    const Matrix v = t.random(InstanceKind::Unitary, 3);

    const HermitianEigen eig = eig_hermitian(h, t.tol());
    const Matrix diag = eig.eigenvalues.cast<Complex>().asDiagonal();
    t.check("eig_reconstruction", rel(eig.basis * diag * eig.basis.adjoint() - h, h), t.rtol());
    t.check("eig_orthonormality", op_norm(eig.basis.adjoint() * eig.basis - eye(n)), t.rtol());
    t.check("identity_function", rel(matrix_function_hermitian(h, SpectralFunction::identity(), t.tol()) - h, h),
            t.rtol());

    const double kp = condition_number(p);
    const Matrix s = sqrt_pd(p, t.tol());
    const Matrix is = inv_sqrt_pd(p, t.tol());
    t.check("sqrt_squared", rel(s * s - p, p), t.rtol() * kp);
    t.check("inv_sqrt_is_inverse", op_norm(is * s - eye(n)), t.rtol() * kp);

    const PolarFactors pf = polar(g, t.tol());
    t.check("polar_left", rel(pf.left_positive * pf.unitary_part - g, g), t.rtol());
    t.check("polar_right", rel(pf.unitary_part * pf.right_positive - g, g), t.rtol());
    t.check("polar_unitary", op_norm(pf.unitary_part.adjoint() * pf.unitary_part - eye(n)), t.rtol());
    t.expect("polar_positive_parts_pd", min_eig(pf.left_positive) > 0 && min_eig(pf.right_positive) > 0);
    const Matrix shifted = pi(g * v, t.tol());
    t.check("polar_equivariance", op_norm(shifted - pf.unitary_part * v), t.rtol() * condition_number(g));

    const BasicReport rp = classify_basic(p, t.tol());
    const BasicReport rh = classify_basic(h, t.tol());
    const BasicReport rv = classify_basic(v, t.tol());
    const BasicReport rg = classify_basic(g, t.tol());
    const BasicReport rr = classify_basic(t.random(InstanceKind::Reflection, 4), t.tol());
    t.expect("classify_kinds", rp.positive_definite && rp.hermitian && rh.hermitian && rv.unitary &&
                                   rg.invertible && rr.reflection && rr.unitary && rr.hermitian);
}

void weighted_suite(Trial& t) {
    const Eigen::Index n = t.dim();
    const Weight w = make_weight(t.random(InstanceKind::PositiveDefinite, 0), t.tol());
    const double k = w.kappa();
    const Matrix x = t.random(InstanceKind::GeneralInvertible, 1);
    const Matrix y = t.random(InstanceKind::GeneralInvertible, 2);

    t.check("involution", rel(sharp_adjoint(w, sharp_adjoint(w, x)) - x, x), t.rtol() * k);
    t.check("anti_multiplicative",
            op_norm(sharp_adjoint(w, x * y) - sharp_adjoint(w, y) * sharp_adjoint(w, x)) / (op_norm(x) * op_norm(y)),
            t.rtol() * k);
    const Matrix x_inv = x.inverse();
    t.check("inverse_commutes", rel(sharp_adjoint(w, x).inverse() - sharp_adjoint(w, x_inv), x_inv),
            t.rtol() * k * condition_number(x));

    Rng rng(t.sub(10));
    const Vector xi = random_gaussian(rng, n, 1).col(0);
    const Vector eta = random_gaussian(rng, n, 1).col(0);
    const double scale = op_norm(x) * k * op_norm(w.a()) * xi.norm() * eta.norm();
    t.check("adjoint_identity",
            std::abs(weighted_inner(w, x * xi, eta) - weighted_inner(w, xi, sharp_adjoint(w, x) * eta)) / scale,
            t.rtol());

    // operator norm induced by <.,.>_a: never exceeded, attained by power iteration
    const double xa = weighted_op_norm(w, x);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        const Vector z = random_gaussian(rng, n, 1).col(0);
        worst = std::max(worst, weighted_vector_norm(w, x * z) / (xa * weighted_vector_norm(w, z)));
    }
    t.check("op_norm_bound", std::max(0.0, worst - 1.0), t.rtol());
    Vector z = Vector::Ones(n);
    const Matrix gram = sharp_adjoint(w, x) * x;
    for (int i = 0; i < 3000; ++i) z = (gram * z) / weighted_vector_norm(w, gram * z);
    t.check("op_norm_attained", 1.0 - weighted_vector_norm(w, x * z) / (xa * weighted_vector_norm(w, z)), 1e-6);

    t.check("phi_star_isomorphism", rel(sharp_adjoint(w, phi(w, x)) - phi(w, x.adjoint()), x), t.rtol() * k);
    t.check("phi_roundtrip", rel(phi_inv(w, phi(w, x)) - x, x), t.rtol() * k);

    for (auto kind : {InstanceKind::Unitary, InstanceKind::Hermitian, InstanceKind::PositiveDefinite,
                      InstanceKind::Reflection, InstanceKind::GeneralInvertible}) {
        const Matrix g = phi(w, t.random(kind, 20 + static_cast<std::uint64_t>(kind)));
        const ClassVerdict cv = classify_weighted(w, g, t.tol());
        const BasicReport br = classify_basic(phi_inv(w, g), t.tol());
        t.count("classify_agreement", cv.a_unitary == br.unitary && cv.a_hermitian == br.hermitian &&
                                          cv.a_positive == br.positive_definite);
    }

    const Eigen::Index cols = 1 + static_cast<Eigen::Index>(t.seed() % static_cast<std::uint64_t>(n));
    const Matrix basis = t.input(random_gaussian(rng, n, cols));
    const WeightedProjection proj = a_orthogonal_projection(w, basis, t.tol());
    const double qn = std::max(1.0, op_norm(proj.q));
    t.check("projection_idempotent", op_norm(proj.q * proj.q - proj.q) / (qn * qn), t.rtol() * k);
    t.check("projection_a_selfadjoint", op_norm(sharp_adjoint(w, proj.q) - proj.q) / qn, t.rtol() * k);
    t.check("projection_reflection", op_norm(proj.reflection * proj.reflection - eye(n)) / (qn * qn),
            t.rtol() * k);
    t.check("projection_fixes_range", rel(proj.q * basis - basis, basis), t.rtol() * k);
    const Vector probe = random_gaussian(rng, n, 1).col(0);
    const Vector resid = proj.q * probe - probe;
    double orth = 0.0;
    for (Eigen::Index j = 0; j < cols; ++j)
        orth = std::max(orth, std::abs(weighted_inner(w, resid, basis.col(j))));
    t.check("projection_a_orthogonal", orth / (op_norm(w.a()) * qn * probe.norm() * op_norm(basis)), t.rtol() * k);
}

void pt_suite(Trial& t) {
    const Eigen::Index n = t.dim();
    const Matrix hm = t.random(InstanceKind::PositiveDefinite, 0);
    const Matrix km = t.random(InstanceKind::PositiveDefinite, 1);
    const Matrix tm = solve_pt(hm, km, t.tol());

    t.check("pt_residual", rel(tm * hm * tm - km, km), t.rtol());
    t.expect("pt_positive", min_eig(tm) > 0.0);
    const Matrix cross = sqrt_pd(hm, t.tol()) * tm * inv_sqrt_pd(km, t.tol());
    t.check("pt_unitary_characterisation", op_norm(cross.adjoint() * cross - eye(n)), t.rtol());
    // the converse: another positive x leaves h^{1/2} x k^{-1/2} non-unitary
    const Matrix other = t.random(InstanceKind::PositiveDefinite, 2);
    const Matrix cross_other = sqrt_pd(hm, t.tol()) * other * inv_sqrt_pd(km, t.tol());
    t.expect("pt_unitary_converse",
             op_norm(other - tm) <= t.rtol() * op_norm(tm) ||
                 op_norm(cross_other.adjoint() * cross_other - eye(n)) > 1e3 * t.rtol());

    Rng rng(t.sub(3));
    const double base = op_norm(tm * hm * tm - km);
    for (int i = 0; i < 20; ++i) {
        Matrix dir = hermitian_part(random_gaussian(rng, n, n));
        dir *= 1e-4 * op_norm(tm) / op_norm(dir);
        const Matrix moved = tm + dir;
        t.count("pt_local_uniqueness", op_norm(moved * hm * moved - km) > base);
    }

    if (n <= 6) {
        const SolutionFamily fam = all_solutions(hm, km, true, kDefaultEnumerationCap, t.tol());
        t.check("family_residual", fam.max_residual, t.rtol());
        t.check("family_positive_member", rel(fam.positive_solution - tm, tm), t.rtol() * t.cond());
        const Weight wa = make_weight(hm, t.tol());
        double sharp = 0.0;
        for (const Matrix& x : *fam.enumerated) {
            const Matrix xa = x * hm;
            sharp = std::max(sharp, rel(sharp_adjoint(wa, xa) - xa, xa));
        }
        t.check("family_a_hermitian", sharp, t.rtol() * wa.kappa());
        t.expect("family_count", fam.enumerated->size() == (std::size_t{1} << n));
    }

    const Matrix xm = unique_positive_middle(hm, km, t.tol());
    const Matrix prod = hm * xm * km;
    t.expect("middle_positive", min_eig(xm) > 0.0);
    t.check("middle_unitary", op_norm(prod.adjoint() * prod - eye(n)), t.rtol());
    const Matrix th = theta(hm, km, t.tol());
    t.check("theta_unitary", op_norm(th.adjoint() * th - eye(n)), t.rtol());
    const Matrix hinv = hm.inverse();
    const Matrix kinv = km.inverse();
    const Matrix closed = hinv * sqrt_pd(hermitian_part(hm * kinv * kinv * hm), t.tol()) * hinv;
    t.check("middle_closed_form", rel(xm - closed, xm), t.rtol() * t.cond() * t.cond());

    const Matrix u = unique_unitary_completion(hm, km, t.tol());
    const Matrix completed = hm * km * u;
    t.check("completion_unitary", op_norm(u.adjoint() * u - eye(n)), t.rtol());
    t.check("completion_hermitian", rel(completed - completed.adjoint(), completed), t.rtol());
    t.expect("completion_positive", min_eig(completed) > 0.0);
    for (std::uint64_t i = 0; i < 8; ++i) {
        const Matrix probe = t.random(InstanceKind::Unitary, 40 + i);
        if (op_norm(probe - u) <= 1e-6) continue;
        t.count("completion_uniqueness", !classify_basic(hm * km * probe, t.tol()).positive_definite);
    }
}

void fibration_suite(Trial& t) {
    const Eigen::Index n = t.dim();
    const Weight w = make_weight(t.random(InstanceKind::PositiveDefinite, 0), t.tol());
    const double k = w.kappa();
    const Matrix u = t.random(InstanceKind::Unitary, 1);
    const Matrix lam = t.random(InstanceKind::PositiveDefinite, 2);

    t.check("fibre", op_norm(pi(lam * u, t.tol()) - u), t.rtol() * condition_number(lam));

    const Matrix g = alpha(w, u, t.tol());
    const ClassVerdict cv = classify_weighted(w, g, t.tol());
    t.check("alpha_section", op_norm(pi(g, t.tol()) - u), t.rtol() * k);
    t.check("alpha_a_unitary", cv.residuals.at("a_unitary"), t.rtol() * k);
    const Matrix lam_g = g * u.adjoint();
    t.check("alpha_positive_factor", rel(lam_g * w.a() * lam_g - u * w.a() * u.adjoint(), w.a()), t.rtol() * k);
    t.expect("alpha_positive_factor_pd", min_eig(lam_g) > 0.0);

    const Matrix member = phi(w, t.random(InstanceKind::Unitary, 3));
    t.check("alpha_retraction", rel(alpha(w, pi(member, t.tol()), t.tol()) - member, member), t.rtol() * k);

    // only the alpha point of the fibre is a-unitary
    const Matrix lam_star = lam_g;
    for (std::uint64_t i = 0; i < 10; ++i) {
        const Matrix cand = t.random(InstanceKind::PositiveDefinite, 10 + i);
        const bool accepted = classify_weighted(w, cand * u, t.tol()).a_unitary;
        t.count("fibre_intersection_unique", accepted == (op_norm(cand - lam_star) <= 1e-6));
    }
    t.expect("fibre_intersection_hit", classify_weighted(w, lam_star * u, t.tol()).a_unitary);

    const Matrix x = t.random(InstanceKind::GeneralInvertible, 4);
    const WeightedPolarFactors wp = weighted_polar(w, x, t.tol());
    t.check("weighted_polar_left", rel(wp.a_positive_left * wp.a_unitary_part - x, x), t.rtol() * k);
    t.check("weighted_polar_right", rel(wp.a_unitary_part * wp.a_positive_right - x, x), t.rtol() * k);
    const ClassVerdict vv = classify_weighted(w, wp.a_unitary_part, t.tol());
    t.expect("weighted_polar_classes", vv.a_unitary &&
                                           classify_weighted(w, wp.a_positive_left, t.tol()).a_positive &&
                                           classify_weighted(w, wp.a_positive_right, t.tol()).a_positive);
    const Matrix v_alt = alpha(w, pi(phi_inv(w, x), t.tol()), t.tol());
    t.expect("alpha_route_a_unitary", classify_weighted(w, v_alt, t.tol()).a_unitary);
    t.check("alpha_route_reconstructs", rel((x * v_alt.inverse()) * v_alt - x, x), t.rtol() * k);
    t.note("weighted_polar_vs_alpha_route_gap", op_norm(wp.a_unitary_part - v_alt));

    const Matrix rho = t.random(InstanceKind::Reflection, 5);
    const Matrix eps = lift_reflection(w, rho, t.tol());
    t.check("lift_reflection_square", op_norm(eps * eps - eye(n)), t.rtol() * k);
    t.check("lift_reflection_a_selfadjoint", rel(sharp_adjoint(w, eps) - eps, eps), t.rtol() * k);
    t.check("lift_reflection_section", op_norm(pi(eps, t.tol()) - rho), t.rtol() * k);

    const Matrix mu = t.random(InstanceKind::PositiveDefinite, 6);
    const Matrix pos = inv_positive_restriction(w, mu, t.tol());
    t.check("positive_section", rel(pi_plus(pos, t.tol()) - mu, mu), t.rtol() * k);
    t.expect("positive_section_class", classify_weighted(w, pos, t.tol()).a_positive);
}

void structure_suite(Trial& t) {
    const Eigen::Index n = t.dim();
    const Matrix a = t.random(InstanceKind::PositiveDefinite, 0);
    const Weight w = make_weight(a, t.tol());

    for (std::uint64_t i = 0; i < 5; ++i) {
        const Matrix p = t.random(InstanceKind::PositiveDefinite, 10 + i);
        t.count("a_unitary_positive_is_identity", !classify_weighted(w, p, t.tol()).a_unitary);
    }
    t.check("alpha_identity", op_norm(alpha(w, eye(n), t.tol()) - eye(n)), t.rtol() * w.kappa());

    // similar-to-{unitary, positive, Hermitian} elements carry verified witnesses
    const Matrix conj = random_instance(InstanceKind::PositiveDefinite, n, t.sub(20), 10.0);
    const Weight wc = make_weight(conj, t.tol());
    const Matrix xu = t.input(phi(wc, t.random(InstanceKind::Unitary, 21)));
    const Matrix xp = t.input(phi(wc, t.random(InstanceKind::PositiveDefinite, 22)));
    const Matrix xh = t.input(phi(wc, t.random(InstanceKind::Hermitian, 23)));
    const UnionVerdict vu = classify_union(xu, t.tol());
    const UnionVerdict vp = classify_union(xp, t.tol());
    const UnionVerdict vh = classify_union(xh, t.tol());
    t.expect("union_unitary", vu.in_union_unitary.value_or(false) && vu.witness_verified);
    t.expect("union_positive", vp.in_union_positive.value_or(false) && vp.in_union_hermitian.value_or(false) &&
                                   vp.witness_verified);
    t.expect("union_hermitian", vh.in_union_hermitian.value_or(false) && vh.witness_verified);
    if (vh.diag_basis) {
        // (V V*)^{-1} x = x* (V V*)^{-1} for x = V D V^{-1} with D real
        const Matrix& basis = *vh.diag_basis;
        const Matrix witness = (basis * basis.adjoint()).inverse();
        const double kv = condition_number(basis);
        t.check("witness_identity", rel(witness * xh - xh.adjoint() * witness, witness * xh), t.rtol() * kv * kv);
    }

    // three routes to U_a ∩ Gs
    const Matrix probes[] = {
        sample_commutant(a, CommutantKind::Reflection, t.sub(30), t.tol()),
        eye(n),
        phi(w, t.random(InstanceKind::Unitary, 31)),
        t.random(InstanceKind::Reflection, 32),
        t.random(InstanceKind::Hermitian, 33),
        phi(w, t.random(InstanceKind::Reflection, 34)),
    };
    for (const Matrix& b : probes) t.count("gs_routes_agree", gs_intersection_check(w, b, t.tol()).agree);
    t.expect("gs_commuting_reflection_member", gs_intersection_check(w, probes[0], t.tol()).membership);

    const Matrix b = t.random(InstanceKind::PositiveDefinite, 40);
    const IntersectionReport ir = intersection_report(
        a, b,
        {IntersectionKind::UnitaryHermitian, IntersectionKind::UnitaryUnitary, IntersectionKind::HermitianHermitian,
         IntersectionKind::PositivePositive, IntersectionKind::UnitaryPositive},
        3, t.sub(41), t.tol());
    for (const IntersectionSample& s : ir.samples) t.count("intersection_samples", s.passed);
    t.expect("intersection_unitary_positive", ir.unitary_positive_only_identity);
}

using SuiteFn = std::function<void(Trial&)>;

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> suites{
        {"core", core_suite},         {"weighted", weighted_suite},   {"pt", pt_suite},
        {"fibration", fibration_suite}, {"structure", structure_suite},
    };
    return suites;
}

Report run_single(const std::string& name, const Options& opt) {
    const SuiteFn& fn = registry().at(name);
    Report r;
    r.suite = name;
    r.seed = opt.seed;
    r.trials = opt.trials;
    r.dims = opt.dims;
    r.tol = opt.tol;
    r.cond_bound = opt.cond_bound;
    for (int i = 0; i < opt.trials; ++i) {
        const auto idx = static_cast<std::uint64_t>(i);
        const Eigen::Index dim = opt.dims[idx % opt.dims.size()];
        Trial trial(mix_seed(opt.seed, idx), dim, opt);
        std::optional<std::string> error;
        try {
            fn(trial);
        } catch (const std::exception& e) {
            error = e.what();
        }
        for (const auto& [key, value] : trial.values()) r.max_residual = std::max(r.max_residual, value);
        for (const auto& [key, value] : trial.experiments())
            r.experiments[key] = std::max(r.experiments.count(key) ? r.experiments[key] : 0.0, value);
        if (!error && !trial.failed()) {
            ++r.passes;
            continue;
        }
        r.failures.push_back({name + "/" + std::to_string(i) + "/dim" + std::to_string(dim), trial.digest_hex(),
                              trial.values(), error});
    }
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"core", "weighted", "pt", "fibration", "structure"};
    return names;
}

bool is_known_suite(const std::string& name) {
    return name == "all" || registry().count(name) > 0;
}

Report run(const Options& options) {
    if (!is_known_suite(options.suite)) throw Error(ErrorKind::BadParams, "suite", "unknown suite '" + options.suite + "'");
    if (options.trials < 0) throw Error(ErrorKind::BadParams, "trials", "must be non-negative");
    if (options.dims.empty()) throw Error(ErrorKind::BadParams, "dims", "at least one dimension required");
    for (int d : options.dims)
        if (d < 1) throw Error(ErrorKind::BadParams, "dims", "dimensions must be positive");

    const auto start = std::chrono::steady_clock::now();
    Report report;
    if (options.suite == "all") {
        report.suite = "all";
        report.seed = options.seed;
        report.dims = options.dims;
        report.tol = options.tol;
        report.cond_bound = options.cond_bound;
        for (const std::string& name : suite_names()) {
            Report part = run_single(name, options);
            report.trials += part.trials;
            report.passes += part.passes;
            report.max_residual = std::max(report.max_residual, part.max_residual);
            report.failures.insert(report.failures.end(), part.failures.begin(), part.failures.end());
            for (const auto& [key, value] : part.experiments)
                report.experiments[key] = std::max(report.experiments.count(key) ? report.experiments[key] : 0.0, value);
            report.parts.push_back(std::move(part));
        }
    } else {
        report = run_single(options.suite, options);
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

nlohmann::json to_json(const Report& report, bool include_timing) {
    nlohmann::json failures = nlohmann::json::array();
    for (const Failure& f : report.failures) {
        nlohmann::json item{{"case_id", f.case_id}, {"inputs_digest", f.inputs_digest}, {"residuals", f.residuals}};
        if (f.error) item["error"] = *f.error;
        failures.push_back(std::move(item));
    }
    nlohmann::json doc{
        {"suite", report.suite},
        {"seed", report.seed},
        {"trials", report.trials},
        {"dims", report.dims},
        {"tol", {{"rtol", report.tol.rtol}, {"atol", report.tol.atol}}},
        {"cond_bound", report.cond_bound},
        {"passes", report.passes},
        {"failures", std::move(failures)},
        {"max_residual", report.max_residual},
        {"experiments", report.experiments},
    };
    if (!report.parts.empty()) {
        nlohmann::json parts = nlohmann::json::array();
        for (const Report& p : report.parts) parts.push_back(to_json(p, false));
        doc["suites"] = std::move(parts);
    }
    if (include_timing) doc["elapsed_ms"] = report.elapsed_ms;
    return doc;
}

}  // namespace wpolar::verify
