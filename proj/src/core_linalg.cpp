#include "wpolar/core_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wpolar {

std::string_view to_string(InstanceKind kind) noexcept {
    switch (kind) {
        case InstanceKind::GeneralInvertible: return "general_invertible";
        case InstanceKind::Unitary: return "unitary";
        case InstanceKind::Hermitian: return "hermitian";
        case InstanceKind::PositiveDefinite: return "positive_definite";
        case InstanceKind::Reflection: return "reflection";
    }
    return "unknown";
}

InstanceKind parse_instance_kind(std::string_view name) {
    for (auto kind : {InstanceKind::GeneralInvertible, InstanceKind::Unitary, InstanceKind::Hermitian,
                      InstanceKind::PositiveDefinite, InstanceKind::Reflection}) {
        if (name == to_string(kind)) return kind;
    }
    throw Error(ErrorKind::BadParams, "kind", "unknown instance kind '" + std::string(name) + "'");
}

SpectralFunction SpectralFunction::identity() { return {[](double t) { return t; }, Domain::Real}; }

SpectralFunction SpectralFunction::sqrt() {
    return {[](double t) { return std::sqrt(std::max(t, 0.0)); }, Domain::NonNegative};
}

SpectralFunction SpectralFunction::inv_sqrt() {
    return {[](double t) { return 1.0 / std::sqrt(t); }, Domain::Positive};
}

SpectralFunction SpectralFunction::reciprocal() {
    return {[](double t) { return 1.0 / t; }, Domain::NonZero};
}

SpectralFunction SpectralFunction::abs() { return {[](double t) { return std::abs(t); }, Domain::Real}; }

// --- helpers -----------------------------------------------------------------

double op_norm(const Matrix& x) {
    if (x.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(x);
    return svd.singularValues()(0);
}

double min_singular_value(const Matrix& x) {
    if (x.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(x);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double condition_number(const Matrix& x) {
    Eigen::JacobiSVD<Matrix> svd(x);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

Matrix hermitian_part(const Matrix& x) { return (x + x.adjoint()) * 0.5; }

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

void require_square(const Matrix& x, const std::string& subject) {
    if (x.rows() != x.cols() || x.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch, subject,
                    "expected a non-empty square matrix, got " + std::to_string(x.rows()) + "x" +
                        std::to_string(x.cols()));
    }
    if (!x.allFinite()) throw Error(ErrorKind::DomainError, subject, "non-finite entry");
}

// --- spectral machinery ------------------------------------------------------

HermitianEigen eig_hermitian(const Matrix& h, const Tolerance& tol) {
    require_square(h, "h");
    const double scale = op_norm(h);
    const double asym = op_norm(h - h.adjoint());
    if (asym > tol.bound(scale)) {
        throw Error(ErrorKind::NotHermitian, "h", "||h - h*|| = " + std::to_string(asym));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::NumericalFailure, "h", "Hermitian eigensolver did not converge");
    }
    HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
    const Matrix rebuilt = out.basis * out.eigenvalues.cast<Complex>().asDiagonal() * out.basis.adjoint();
    if (op_norm(rebuilt - h) > tol.bound(scale)) {
        throw Error(ErrorKind::NumericalFailure, "h", "eigendecomposition does not reconstruct input");
    }
    return out;
}

std::vector<EigenCluster> cluster_eigenvalues(const RealVector& ascending, double rel_gap) {
    std::vector<EigenCluster> clusters;
    if (ascending.size() == 0) return clusters;
    const double gap = rel_gap * ascending.cwiseAbs().maxCoeff();
    EigenCluster current{0, 1, ascending(0)};
    double sum = ascending(0);
    for (Eigen::Index i = 1; i < ascending.size(); ++i) {
        if (ascending(i) - ascending(i - 1) <= gap) {
            ++current.size;
            sum += ascending(i);
        } else {
            current.value = sum / static_cast<double>(current.size);
            clusters.push_back(current);
            current = {i, 1, ascending(i)};
            sum = ascending(i);
        }
    }
    current.value = sum / static_cast<double>(current.size);
    clusters.push_back(current);
    return clusters;
}

Matrix apply_spectral(const HermitianEigen& eig, const std::function<double(double)>& f) {
    const RealVector mapped = eig.eigenvalues.unaryExpr(f);
    return hermitian_part(eig.basis * mapped.cast<Complex>().asDiagonal() * eig.basis.adjoint());
}

namespace {

bool in_domain(double t, SpectralFunction::Domain domain, double atol) {
    using D = SpectralFunction::Domain;
    switch (domain) {
        case D::Real: return true;
        case D::NonNegative: return t >= -atol;
        case D::Positive: return t > atol;
        case D::NonZero: return std::abs(t) > atol;
    }
    return false;
}

}  // namespace

Matrix matrix_function_hermitian(const Matrix& h, const SpectralFunction& f, const Tolerance& tol) {
    const HermitianEigen eig = eig_hermitian(h, tol);
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double t = eig.eigenvalues(i);
        if (!in_domain(t, f.domain, tol.atol) || !std::isfinite(f.eval(t))) {
            throw Error(ErrorKind::DomainError, "h", "eigenvalue " + std::to_string(t) +
                                                         " outside the function's domain");
        }
    }
    return apply_spectral(eig, f.eval);
}

HermitianEigen require_pd(const Matrix& p, const std::string& subject, const Tolerance& tol) {
    require_square(p, subject);
    HermitianEigen eig;
    try {
        eig = eig_hermitian(p, tol);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotHermitian) throw;
        throw Error(ErrorKind::NotPositiveDefinite, subject, "not Hermitian");
    }
    if (eig.eigenvalues(0) <= tol.atol) {
        throw Error(ErrorKind::NotPositiveDefinite, subject,
                    "minimum eigenvalue " + std::to_string(eig.eigenvalues(0)));
    }
    return eig;
}

Matrix sqrt_pd(const Matrix& p, const Tolerance& tol) {
    return apply_spectral(require_pd(p, "p", tol), [](double t) { return std::sqrt(t); });
}

Matrix inv_sqrt_pd(const Matrix& p, const Tolerance& tol) {
    return apply_spectral(require_pd(p, "p", tol), [](double t) { return 1.0 / std::sqrt(t); });
}

// --- polar decomposition -----------------------------------------------------

PolarFactors polar(const Matrix& g, const Tolerance& tol) {
    require_square(g, "g");
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    if (s(s.size() - 1) <= tol.atol) {
        throw Error(ErrorKind::Singular, "g", "minimum singular value " + std::to_string(s(s.size() - 1)));
    }
    const Matrix& left = svd.matrixU();
    const Matrix& right = svd.matrixV();
    const auto sigma = s.cast<Complex>().asDiagonal();
    return PolarFactors{
        left * right.adjoint(),
        hermitian_part(left * sigma * left.adjoint()),
        hermitian_part(right * sigma * right.adjoint()),
    };
}

BasicReport classify_basic(const Matrix& x, const Tolerance& tol) {
    require_square(x, "x");
    const Eigen::Index n = x.rows();
    const Matrix eye = identity(n);
    const double norm = op_norm(x);
    const double sq_scale = std::max(1.0, norm * norm);

    BasicReport r;
    r.hermitian = op_norm(x - x.adjoint()) <= tol.bound(norm);
    r.unitary = op_norm(x.adjoint() * x - eye) <= tol.bound(sq_scale);
    r.reflection = op_norm(x * x - eye) <= tol.bound(sq_scale);
    r.invertible = min_singular_value(x) > tol.atol;
    // P = Q ∩ U lies inside the Hermitian elements.
    if (r.reflection && r.unitary) r.hermitian = true;
    if (r.hermitian && r.invertible) {
        Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(x), Eigen::EigenvaluesOnly);
        r.positive_definite = solver.eigenvalues()(0) > tol.atol;
    }
    Matrix power = x;
    for (Eigen::Index k = 1; k < n; ++k) power = power * x;
    r.nilpotent = op_norm(power) <= tol.bound(std::pow(norm, static_cast<double>(n)));
    return r;
}

// --- random instances --------------------------------------------------------

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
    for (int i = 0; i < 4; ++i) state_[i] = mix_seed(seed, static_cast<std::uint64_t>(i));
}

std::uint64_t Rng::next_u64() {
    // xoshiro256**
    auto rotl = [](std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); };
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

Matrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
    return m;
}

Matrix random_unitary(Rng& rng, Eigen::Index dim) {
    const Matrix z = random_gaussian(rng, dim, dim);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * identity(dim);
    const Matrix& r = qr.matrixQR();
    // Haar measure: fix the phases of R's diagonal.
    for (Eigen::Index j = 0; j < dim; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

namespace {

RealVector log_uniform_spectrum(Rng& rng, Eigen::Index dim, double cond_bound) {
    const double half = 0.5 * std::log(cond_bound);
    RealVector s(dim);
    for (Eigen::Index i = 0; i < dim; ++i) s(i) = std::exp(rng.uniform(-half, half));
    return s;
}

}  // namespace

Matrix random_instance(InstanceKind kind, Eigen::Index dim, std::uint64_t seed, double cond_bound) {
    if (dim < 1) throw Error(ErrorKind::BadParams, "dim", "must be at least 1");
    if (!(cond_bound > 1.0) || !std::isfinite(cond_bound)) {
        throw Error(ErrorKind::BadParams, "cond_bound", "must be a finite number > 1");
    }
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(kind)));
    const Matrix u = random_unitary(rng, dim);
    switch (kind) {
        case InstanceKind::Unitary: return u;
        case InstanceKind::PositiveDefinite: {
            const RealVector s = log_uniform_spectrum(rng, dim, cond_bound);
            return hermitian_part(u * s.cast<Complex>().asDiagonal() * u.adjoint());
        }
        case InstanceKind::Hermitian: {
            RealVector s = log_uniform_spectrum(rng, dim, cond_bound);
            for (Eigen::Index i = 0; i < dim; ++i)
                if (rng.uniform() < 0.5) s(i) = -s(i);
            return hermitian_part(u * s.cast<Complex>().asDiagonal() * u.adjoint());
        }
        case InstanceKind::Reflection: {
            RealVector s(dim);
            for (Eigen::Index i = 0; i < dim; ++i) s(i) = rng.uniform() < 0.5 ? -1.0 : 1.0;
            return hermitian_part(u * s.cast<Complex>().asDiagonal() * u.adjoint());
        }
        case InstanceKind::GeneralInvertible: {
            const RealVector s = log_uniform_spectrum(rng, dim, cond_bound);
            const Matrix v = random_unitary(rng, dim);
            return u * s.cast<Complex>().asDiagonal() * v.adjoint();
        }
    }
    throw Error(ErrorKind::BadParams, "kind");
}

}  // namespace wpolar
