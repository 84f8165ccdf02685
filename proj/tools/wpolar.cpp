// wpolar: command-line front end for weighted polar decomposition.
//
// Exit codes: 0 success, 1 verification failures, 2 malformed input or usage,
// 3 numerical precondition violated, 4 solution enumeration over the cap.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "wpolar/fibration.hpp"
#include "wpolar/matrix_io.hpp"
#include "wpolar/pt_solver.hpp"
#include "wpolar/structure_sets.hpp"
#include "wpolar/verify.hpp"
#include "wpolar/weighted_calculus.hpp"

using namespace wpolar;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitOverflow = 4;

struct Common {
    double tol = 1e-9;
    std::string json_path;
};

Tolerance tolerance(const Common& c) { return Tolerance{c.tol, 1e-12}; }

double default_tol() {
    if (const char* env = std::getenv("WPOLAR_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
        std::cerr << "warning: ignoring invalid WPOLAR_TOL='" << env << "'\n";
    }
    return 1e-9;
}

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--tol", c.tol, "relative tolerance (default 1e-9, env WPOLAR_TOL)")->check(CLI::PositiveNumber);
    cmd->add_option("--json", c.json_path, "also write a JSON report to this path");
}

void emit_json(const Common& c, const json& doc) {
    if (c.json_path.empty()) return;
    std::ofstream out(c.json_path, std::ios::binary);
    if (!out) throw io::FormatError("cannot write '" + c.json_path + "'");
    out << doc.dump(2) << '\n';
}

void print(const std::string& label, const Matrix& m) { std::cout << label << ":\n" << io::format_matrix(m); }

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

double rel(const Matrix& diff, const Matrix& ref) { return op_norm(diff) / std::max(op_norm(ref), 1e-300); }

Matrix load(const std::string& path) { return io::read_matrix_file(path).matrix; }

void require_same_dim(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows()) throw io::FormatError(std::string(what) + ": dimensions differ");
}

// --- commands ------------------------------------------------------------------

int cmd_decompose(const std::string& input, const std::string& weight_path, const std::string& out_prefix,
                  const Common& c) {
    const Matrix g = load(input);
    const Tolerance tol = tolerance(c);
    json doc{{"command", "decompose"}, {"tol", c.tol}};
    Matrix unitary, left, right;
    if (weight_path.empty()) {
        const PolarFactors pf = polar(g, tol);
        unitary = pf.unitary_part;
        left = pf.left_positive;
        right = pf.right_positive;
        std::cout << "classical polar decomposition g = lambda u = u lambda'\n";
        print("u", unitary);
        print("lambda", left);
        print("lambda'", right);
        doc["residuals"] = {{"left", rel(left * unitary - g, g)},
                            {"right", rel(unitary * right - g, g)},
                            {"unitarity", op_norm(unitary.adjoint() * unitary - identity(g.rows()))}};
    } else {
        const Matrix a = load(weight_path);
        require_same_dim(a, g, "weight");
        const Weight w = make_weight(a, tol);
        const WeightedPolarFactors wp = weighted_polar(w, g, tol);
        unitary = wp.a_unitary_part;
        left = wp.a_positive_left;
        right = wp.a_positive_right;
        std::cout << "weighted polar decomposition g = R V = V R' (V a-unitary, R, R' a-positive)\n";
        print("V", unitary);
        print("R", left);
        print("R'", right);
        doc["residuals"] = {{"left", rel(left * unitary - g, g)},
                            {"right", rel(unitary * right - g, g)},
                            {"a_unitarity", classify_weighted(w, unitary, tol).residuals.at("a_unitary")}};
    }
    for (const auto& [name, value] : doc["residuals"].items())
        std::cout << "residual " << name << " = " << sci(value.get<double>()) << '\n';
    doc["unitary_part"] = io::to_json(unitary);
    doc["left_positive"] = io::to_json(left);
    doc["right_positive"] = io::to_json(right);
    if (!out_prefix.empty()) {
        io::write_matrix_file(out_prefix + "_unitary.json", unitary, "unitary_part");
        io::write_matrix_file(out_prefix + "_left.json", left, "left_positive");
        io::write_matrix_file(out_prefix + "_right.json", right, "right_positive");
    }
    emit_json(c, doc);
    return kExitOk;
}

int cmd_solve(const std::string& h_path, const std::string& k_path, bool all, std::size_t cap, const Common& c) {
    const Matrix h = load(h_path);
    const Matrix k = load(k_path);
    require_same_dim(h, k, "k");
    const Tolerance tol = tolerance(c);
    const Matrix t = solve_pt(h, k, tol);
    const double residual = rel(t * h * t - k, k);
    std::cout << "positive solution T of T h T = k:\n" << io::format_matrix(t);
    std::cout << "residual ||T h T - k|| / ||k|| = " << sci(residual) << '\n';
    json doc{{"command", "solve"}, {"tol", c.tol}, {"solution", io::to_json(t)}, {"residual", residual}};

    if (all) {
        const SolutionFamily fam = all_solutions(h, k, true, cap, tol);
        std::cout << "m = (h^{1/2} k h^{1/2})^{1/2}:\n" << io::format_matrix(fam.m);
        json blocks = json::array();
        std::cout << "eigenspace blocks of m:";
        for (const EigenBlock& b : fam.eigenspace_blocks) {
            std::cout << " (" << b.eigenvalue << " x" << b.multiplicity << ")";
            blocks.push_back({{"eigenvalue", b.eigenvalue}, {"multiplicity", b.multiplicity}});
        }
        std::cout << '\n';
        if (fam.multiplicity_warning) {
            std::cout << "warning: repeated eigenvalue in m; the solution set is a continuum, "
                         "listing eigenbasis sign representatives only\n";
        }
        json members = json::array();
        std::cout << fam.enumerated->size() << " enumerated solutions (max residual "
                  << sci(fam.max_residual) << ")\n";
        for (std::size_t i = 0; i < fam.enumerated->size(); ++i) {
            print("solution " + std::to_string(i), (*fam.enumerated)[i]);
            members.push_back(io::to_json((*fam.enumerated)[i]));
        }
        doc["family"] = {{"m", io::to_json(fam.m)},
                         {"blocks", std::move(blocks)},
                         {"multiplicity_warning", fam.multiplicity_warning},
                         {"max_residual", fam.max_residual},
                         {"enumerated", std::move(members)}};
    }
    emit_json(c, doc);
    return kExitOk;
}

int cmd_alpha(const std::string& weight_path, const std::string& u_path, const std::string& out, const Common& c) {
    const Matrix a = load(weight_path);
    const Matrix u = load(u_path);
    require_same_dim(a, u, "u");
    const Tolerance tol = tolerance(c);
    const Weight w = make_weight(a, tol);
    const Matrix g = alpha(w, u, tol);
    const ClassVerdict cv = classify_weighted(w, g, tol);
    const double section = op_norm(pi(g, tol) - u);
    print("alpha(u): the a-unitary element with unitary part u", g);
    std::cout << "residual ||pi(alpha(u)) - u|| = " << sci(section) << '\n';
    std::cout << "residual a-unitarity = " << sci(cv.residuals.at("a_unitary")) << '\n';
    if (!out.empty()) io::write_matrix_file(out, g, "alpha");
    emit_json(c, {{"command", "alpha"},
                  {"tol", c.tol},
                  {"result", io::to_json(g)},
                  {"residuals", {{"section", section}, {"a_unitary", cv.residuals.at("a_unitary")}}}});
    return kExitOk;
}

int cmd_project(const std::string& weight_path, const std::string& basis_path, int rank, const Common& c) {
    const Matrix a = load(weight_path);
    const Matrix full = load(basis_path);
    require_same_dim(a, full, "basis");
    if (rank < 0 || rank > full.cols()) throw io::FormatError("--rank must lie in 1..dim");
    const Matrix basis = rank == 0 ? full : Matrix(full.leftCols(rank));
    const Tolerance tol = tolerance(c);
    const Weight w = make_weight(a, tol);
    const WeightedProjection proj = a_orthogonal_projection(w, basis, tol);
    const double idem = op_norm(proj.q * proj.q - proj.q);
    const double selfadj = op_norm(sharp_adjoint(w, proj.q) - proj.q);
    print("q (a-orthogonal projection onto span of basis columns)", proj.q);
    print("reflection 2q - 1", proj.reflection);
    std::cout << "residual ||q^2 - q|| = " << sci(idem) << '\n';
    std::cout << "residual ||q^#a - q|| = " << sci(selfadj) << '\n';
    emit_json(c, {{"command", "project"},
                  {"tol", c.tol},
                  {"q", io::to_json(proj.q)},
                  {"reflection", io::to_json(proj.reflection)},
                  {"residuals", {{"idempotent", idem}, {"a_selfadjoint", selfadj}}}});
    return kExitOk;
}

std::string flag(const std::optional<bool>& v) { return v ? (*v ? "yes" : "no") : "undecidable"; }

int cmd_classify(const std::string& x_path, const std::string& weight_path, const Common& c) {
    const Matrix x = load(x_path);
    const Tolerance tol = tolerance(c);
    json doc{{"command", "classify"}, {"tol", c.tol}};
    if (!weight_path.empty()) {
        const Matrix a = load(weight_path);
        require_same_dim(a, x, "weight");
        const Weight w = make_weight(a, tol);
        const ClassVerdict v = classify_weighted(w, x, tol);
        std::cout << "a-unitary:   " << (v.a_unitary ? "yes" : "no") << '\n'
                  << "a-hermitian: " << (v.a_hermitian ? "yes" : "no") << '\n'
                  << "a-positive:  " << (v.a_positive ? "yes" : "no") << '\n';
        for (const auto& [name, value] : v.residuals) std::cout << "residual " << name << " = " << sci(value) << '\n';
        json spectrum = json::array();
        for (Eigen::Index i = 0; i < v.spectrum.size(); ++i)
            spectrum.push_back({v.spectrum(i).real(), v.spectrum(i).imag()});
        doc["verdict"] = {{"a_unitary", v.a_unitary},
                          {"a_hermitian", v.a_hermitian},
                          {"a_positive", v.a_positive},
                          {"residuals", v.residuals},
                          {"spectrum", std::move(spectrum)}};
        emit_json(c, doc);
        return kExitOk;
    }

    const UnionVerdict v = classify_union(x, tol);
    std::cout << "similar to a unitary (in some U_a):      " << flag(v.in_union_unitary) << '\n'
              << "similar to a positive (in some G+_a):    " << flag(v.in_union_positive) << '\n'
              << "similar to a Hermitian (in some Gs_a):   " << flag(v.in_union_hermitian) << '\n';
    const bool none = v.decided() && !*v.in_union_unitary && !*v.in_union_positive && !*v.in_union_hermitian;
    if (none) std::cout << "not in any weighted class union" << (v.defective ? " (defective eigenstructure)" : "") << '\n';
    if (!v.decided()) std::cout << "eigenbasis too ill-conditioned to decide at this tolerance\n";
    if (v.witness_weight) {
        print("witness weight a", *v.witness_weight);
        std::cout << "witness verified: " << (v.witness_verified ? "yes" : "no") << '\n';
    }
    auto opt = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
    doc["union"] = {{"in_union_unitary", opt(v.in_union_unitary)},
                    {"in_union_positive", opt(v.in_union_positive)},
                    {"in_union_hermitian", opt(v.in_union_hermitian)},
                    {"defective", v.defective},
                    {"witness_verified", v.witness_verified},
                    {"residuals", v.residuals}};
    if (v.witness_weight) doc["union"]["witness_weight"] = io::to_json(*v.witness_weight);
    emit_json(c, doc);
    return kExitOk;
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int d = std::stoi(item, &used);
            if (used != item.size() || d < 1) throw std::invalid_argument(item);
            dims.push_back(d);
        } catch (const std::exception&) {
            throw io::FormatError("bad --dims entry '" + item + "'");
        }
    }
    if (dims.empty()) throw io::FormatError("--dims must list at least one dimension");
    return dims;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, const std::string& dims, double cond,
               const Common& c) {
    if (!verify::is_known_suite(suite)) {
        std::cerr << "error: unknown suite '" << suite << "' (known: all";
        for (const auto& s : verify::suite_names()) std::cerr << ", " << s;
        std::cerr << ")\n";
        return kExitMalformed;
    }
    verify::Options opt;
    opt.suite = suite;
    opt.seed = seed;
    opt.trials = trials;
    opt.dims = parse_dims(dims);
    opt.tol = tolerance(c);
    opt.cond_bound = cond;
    const verify::Report r = verify::run(opt);

    auto line = [](const verify::Report& p) {
        std::cout << std::left << std::setw(10) << p.suite << " " << p.passes << "/" << p.trials
                  << " passed, max residual " << sci(p.max_residual) << '\n';
    };
    if (r.parts.empty()) {
        line(r);
    } else {
        for (const auto& p : r.parts) line(p);
        line(r);
    }
    for (const auto& [name, value] : r.experiments) std::cout << "experiment " << name << " = " << sci(value) << '\n';
    for (const verify::Failure& f : r.failures) {
        std::cerr << "FAIL " << f.case_id << " inputs " << f.inputs_digest;
        if (f.error) std::cerr << " error: " << *f.error;
        std::cerr << '\n';
    }
    emit_json(c, verify::to_json(r));
    return r.failures.empty() ? kExitOk : kExitVerifyFailed;
}

int cmd_sample(const std::string& kind, int dim, std::uint64_t seed, double cond, const std::string& out) {
    const Matrix m = random_instance(parse_instance_kind(kind), dim, seed, cond);
    const std::string name = kind + "-" + std::to_string(dim) + "-" + std::to_string(seed);
    if (out.empty()) {
        std::cout << io::to_json(m, name).dump(2) << '\n';
    } else {
        io::write_matrix_file(out, m, name);
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polar decomposition under weighted scalar products <x, y>_a = <a x, y>"};
    app.require_subcommand(1);
    Common common;
    common.tol = default_tol();

    std::string input, weight, out, second;
    bool all = false;
    std::size_t cap = kDefaultEnumerationCap;
    int rank = 0;

    auto* decompose = app.add_subcommand("decompose", "classical or weighted polar decomposition");
    decompose->add_option("input", input, "matrix file")->required();
    decompose->add_option("--weight", weight, "weight matrix file (positive definite)");
    decompose->add_option("--out-prefix", out, "write factors to <prefix>_{unitary,left,right}.json");
    add_common(decompose, common);

    auto* solve = app.add_subcommand("solve", "positive solution of T h T = k");
    solve->add_option("h_file", input, "h matrix file")->required();
    solve->add_option("k_file", second, "k matrix file")->required();
    solve->add_flag("--all", all, "describe and enumerate the whole solution family");
    solve->add_option("--cap", cap, "maximum number of enumerated solutions")->check(CLI::PositiveNumber);
    add_common(solve, common);

    auto* alpha_cmd = app.add_subcommand("alpha", "the a-unitary element with prescribed unitary part");
    alpha_cmd->add_option("weight", weight, "weight matrix file")->required();
    alpha_cmd->add_option("u", second, "unitary matrix file")->required();
    alpha_cmd->add_option("--out", out, "write the result to this matrix file");
    add_common(alpha_cmd, common);

    auto* project = app.add_subcommand("project", "a-orthogonal projection onto a column span");
    project->add_option("weight", weight, "weight matrix file")->required();
    project->add_option("basis", second, "square matrix file whose columns span the subspace")->required();
    project->add_option("--rank", rank, "use only the first k columns of the basis file");
    add_common(project, common);

    auto* classify = app.add_subcommand("classify", "weighted class membership or union membership");
    classify->add_option("x", input, "matrix file")->required();
    classify->add_option("--weight", weight, "decide U_a / Gs_a / G+_a for this weight");
    add_common(classify, common);

    std::string suite = "all", dims = "2,4,8";
    std::uint64_t seed = 0;
    int trials = 20;
    double cond = 100.0;
    auto* verify_cmd = app.add_subcommand("verify", "seeded property verification");
    verify_cmd->add_option("suite", suite, "suite name or 'all'")->required();
    verify_cmd->add_option("--seed", seed, "base seed");
    verify_cmd->add_option("--trials", trials, "trials per suite")->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--dims", dims, "comma separated dimensions, cycled over trials");
    verify_cmd->add_option("--cond", cond, "condition-number bound for random instances");
    add_common(verify_cmd, common);

    std::string kind;
    int dim = 2;
    auto* sample = app.add_subcommand("sample", "write a seeded random matrix");
    sample->add_option("kind", kind, "general_invertible | unitary | hermitian | positive_definite | reflection")
        ->required();
    sample->add_option("--dim", dim, "dimension")->required();
    sample->add_option("--seed", seed, "seed");
    sample->add_option("--cond", cond, "condition-number bound");
    sample->add_option("--out", out, "output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitMalformed;
    }

    try {
        if (*decompose) return cmd_decompose(input, weight, out, common);
        if (*solve) return cmd_solve(input, second, all, cap, common);
        if (*alpha_cmd) return cmd_alpha(weight, second, out, common);
        if (*project) return cmd_project(weight, second, rank, common);
        if (*classify) return cmd_classify(input, weight, common);
        if (*verify_cmd) return cmd_verify(suite, seed, trials, dims, cond, common);
        if (*sample) return cmd_sample(kind, dim, seed, cond, out);
    } catch (const io::FormatError& e) {
        std::cerr << "error: malformed input: " << e.what() << '\n';
        return kExitMalformed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::EnumerationOverflow: return kExitOverflow;
            case ErrorKind::BadParams:
            case ErrorKind::DimensionMismatch: return kExitMalformed;
            default: return kExitPrecondition;
        }
    }
    return kExitMalformed;
}
