#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wpolar/error.hpp"

namespace wpolar {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Residual thresholds. A check on a quantity of magnitude `scale` passes
/// when the residual is at most rtol * scale + atol.
struct Tolerance {
    double rtol = 1e-9;
    double atol = 1e-12;

    double bound(double scale) const noexcept { return rtol * scale + atol; }
};

/// Relative gap below which neighbouring eigenvalues are treated as one cluster.
inline constexpr double kClusterGap = 1e-8;

struct HermitianEigen {
    RealVector eigenvalues;  // ascending
    Matrix basis;            // unitary, columns are eigenvectors
};

/// A contiguous run of (numerically) equal eigenvalues in an ascending spectrum.
struct EigenCluster {
    Eigen::Index first = 0;
    Eigen::Index size = 0;
    double value = 0.0;  // mean of the clustered eigenvalues
};

struct PolarFactors {
    Matrix unitary_part;    // u
    Matrix left_positive;   // lambda  = (g g*)^{1/2},  g = lambda u
    Matrix right_positive;  // lambda' = (g* g)^{1/2},  g = u lambda'
};

struct BasicReport {
    bool hermitian = false;
    bool positive_definite = false;
    bool unitary = false;
    bool reflection = false;
    bool invertible = false;
    bool nilpotent = false;
};

enum class InstanceKind { GeneralInvertible, Unitary, Hermitian, PositiveDefinite, Reflection };

std::string_view to_string(InstanceKind kind) noexcept;
InstanceKind parse_instance_kind(std::string_view name);

/// Real function applied to a Hermitian spectrum, with the set on which it is defined.
struct SpectralFunction {
    enum class Domain { Real, NonNegative, Positive, NonZero };

    std::function<double(double)> eval;
    Domain domain = Domain::Real;

    static SpectralFunction identity();
    static SpectralFunction sqrt();
    static SpectralFunction inv_sqrt();
    static SpectralFunction reciprocal();
    static SpectralFunction abs();
};

// --- norms and small helpers -------------------------------------------------

double op_norm(const Matrix& x);
double min_singular_value(const Matrix& x);
double condition_number(const Matrix& x);
Matrix hermitian_part(const Matrix& x);
Matrix identity(Eigen::Index dim);
void require_square(const Matrix& x, const std::string& subject);

// --- spectral machinery ------------------------------------------------------

HermitianEigen eig_hermitian(const Matrix& h, const Tolerance& tol = {});

std::vector<EigenCluster> cluster_eigenvalues(const RealVector& ascending,
                                              double rel_gap = kClusterGap);

Matrix matrix_function_hermitian(const Matrix& h, const SpectralFunction& f,
                                 const Tolerance& tol = {});

/// Rebuilds basis * diag(f(eigenvalues)) * basis* from an existing decomposition.
Matrix apply_spectral(const HermitianEigen& eig, const std::function<double(double)>& f);

Matrix sqrt_pd(const Matrix& p, const Tolerance& tol = {});
Matrix inv_sqrt_pd(const Matrix& p, const Tolerance& tol = {});

/// Validates positive definiteness; returns the decomposition for reuse.
HermitianEigen require_pd(const Matrix& p, const std::string& subject, const Tolerance& tol = {});

// --- polar decomposition and classification ---------------------------------

PolarFactors polar(const Matrix& g, const Tolerance& tol = {});

BasicReport classify_basic(const Matrix& x, const Tolerance& tol = {});

// --- deterministic random instances -----------------------------------------

/// splitmix64 finaliser, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Gaussian source that yields the same stream on every platform for a given seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    double uniform();  // [0, 1)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    Complex complex_normal();
    std::uint64_t next_u64();

private:
    std::uint64_t state_[4];
    bool has_spare_ = false;
    double spare_ = 0.0;
};

Matrix random_gaussian(Rng& rng, Eigen::Index rows, Eigen::Index cols);
Matrix random_unitary(Rng& rng, Eigen::Index dim);

Matrix random_instance(InstanceKind kind, Eigen::Index dim, std::uint64_t seed,
                       double cond_bound = 100.0);

}  // namespace wpolar
