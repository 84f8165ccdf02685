#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "wpolar/core_linalg.hpp"

using namespace wpolar;
using wpolar::test::mat;

TEST_CASE("eig_hermitian of a diagonal matrix sorts the spectrum") {
    const HermitianEigen e = eig_hermitian(mat({{3, 0}, {0, 1}}));
    CHECK(e.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(3.0));
    // basis is a permutation of the identity columns, up to phase
    CHECK(std::abs(e.basis(1, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(e.basis(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eig_hermitian of the swap matrix") {
    const HermitianEigen e = eig_hermitian(mat({{0, 1}, {1, 0}}));
    CHECK(e.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
    const double r = 1.0 / std::sqrt(2.0);
    // eigenvector for -1 is (1, -1)/sqrt2, for +1 is (1, 1)/sqrt2, each up to a phase
    CHECK(std::abs(e.basis(0, 0)) == doctest::Approx(r));
    CHECK(std::abs(e.basis(0, 0) + e.basis(1, 0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(e.basis(0, 1) - e.basis(1, 1)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("eig_hermitian reconstructs random Hermitian input") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Matrix h = random_instance(InstanceKind::Hermitian, 6, seed);
        const HermitianEigen e = eig_hermitian(h);
        const Matrix rebuilt = e.basis * e.eigenvalues.cast<Complex>().asDiagonal() * e.basis.adjoint();
        CHECK(op_norm(rebuilt - h) <= 1e-12 * op_norm(h));
        CHECK(op_norm(e.basis.adjoint() * e.basis - identity(6)) <= 1e-12);
        for (Eigen::Index i = 1; i < 6; ++i) CHECK(e.eigenvalues(i - 1) <= e.eigenvalues(i));
    }
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
    CHECK_THROWS_WITH_AS(eig_hermitian(mat({{1, 1}, {0, 1}})), doctest::Contains("NotHermitian"), Error);
}

TEST_CASE("matrix_function_hermitian on small spectra") {
    CHECK(test::near(matrix_function_hermitian(mat({{4, 0}, {0, 9}}), SpectralFunction::sqrt()),
                     mat({{2, 0}, {0, 3}})));
    CHECK(test::near(matrix_function_hermitian(mat({{2, 0}, {0, 4}}), SpectralFunction::reciprocal()),
                     mat({{0.5, 0}, {0, 0.25}})));
    CHECK(test::near(matrix_function_hermitian(mat({{0, 2}, {2, 0}}), SpectralFunction::abs()),
                     mat({{2, 0}, {0, 2}})));
}

TEST_CASE("matrix_function_hermitian domain errors") {
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::BadParams;
    };
    CHECK(kind_of([] { matrix_function_hermitian(mat({{-1, 0}, {0, 1}}), SpectralFunction::sqrt()); }) ==
          ErrorKind::DomainError);
    CHECK(kind_of([] { matrix_function_hermitian(mat({{0, 0}, {0, 1}}), SpectralFunction::reciprocal()); }) ==
          ErrorKind::DomainError);
    CHECK(kind_of([] { matrix_function_hermitian(mat({{1e-14, 0}, {0, 1}}), SpectralFunction::inv_sqrt()); }) ==
          ErrorKind::DomainError);
}

TEST_CASE("identity function is the identity on random Hermitian matrices") {
    for (Eigen::Index n = 1; n <= 8; ++n) {
        const Matrix h = random_instance(InstanceKind::Hermitian, n, 100 + n);
        CHECK(op_norm(matrix_function_hermitian(h, SpectralFunction::identity()) - h) <= 1e-12 * op_norm(h));
    }
}

TEST_CASE("sqrt_pd and inv_sqrt_pd") {
    CHECK(test::near(sqrt_pd(identity(3)), identity(3)));
    CHECK(test::near(sqrt_pd(mat({{4, 0}, {0, 16}})), mat({{2, 0}, {0, 4}})));
    CHECK(test::near(inv_sqrt_pd(mat({{4, 0}, {0, 16}})), mat({{0.5, 0}, {0, 0.25}})));

    for (Eigen::Index n = 1; n <= 10; ++n) {
        const Matrix p = random_instance(InstanceKind::PositiveDefinite, n, 7 * n, 100.0);
        const double k = condition_number(p);
        const Matrix s = sqrt_pd(p);
        const Matrix is = inv_sqrt_pd(p);
        CHECK(op_norm(s * s - p) / op_norm(p) <= 1e-10);
        CHECK(op_norm(s * s - p) <= 1e-9 * k * op_norm(p));
        CHECK(op_norm(is * s - identity(n)) <= 1e-9 * k);
        CHECK(classify_basic(s).positive_definite);
    }
}

TEST_CASE("sqrt_pd rejects matrices that are not positive definite") {
    CHECK_THROWS_WITH_AS(sqrt_pd(mat({{1, 0}, {0, 0}})), doctest::Contains("NotPositiveDefinite"), Error);
    CHECK_THROWS_WITH_AS(sqrt_pd(mat({{1, 0}, {0, -2}})), doctest::Contains("NotPositiveDefinite"), Error);
    CHECK_THROWS_WITH_AS(inv_sqrt_pd(mat({{1, 1}, {0, 1}})), doctest::Contains("NotPositiveDefinite"), Error);
}

TEST_CASE("polar of positive, unitary and a 2x2 rotation-scaling") {
    const Matrix d = mat({{2, 0}, {0, 3}});
    PolarFactors pf = polar(d);
    CHECK(test::near(pf.unitary_part, identity(2)));
    CHECK(test::near(pf.left_positive, d));
    CHECK(test::near(pf.right_positive, d));

    const Matrix u = random_instance(InstanceKind::Unitary, 3, 5);
    pf = polar(u);
    CHECK(test::near(pf.unitary_part, u));
    CHECK(test::near(pf.left_positive, identity(3)));

    // g g* = diag(4, 1), g* g = diag(1, 4)
    pf = polar(mat({{0, -2}, {1, 0}}));
    CHECK(test::near(pf.left_positive, mat({{2, 0}, {0, 1}})));
    CHECK(test::near(pf.unitary_part, mat({{0, -1}, {1, 0}})));
    CHECK(test::near(pf.right_positive, mat({{1, 0}, {0, 2}})));
}

TEST_CASE("polar invariants and uniqueness on random input") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::Index n = 1 + static_cast<Eigen::Index>(seed % 8);
        const Matrix g = random_instance(InstanceKind::GeneralInvertible, n, seed);
        const PolarFactors pf = polar(g);
        CHECK(op_norm(pf.unitary_part.adjoint() * pf.unitary_part - identity(n)) <= 1e-12);
        CHECK(op_norm(pf.left_positive * pf.unitary_part - g) <= 1e-12 * op_norm(g));
        CHECK(op_norm(pf.unitary_part * pf.right_positive - g) <= 1e-12 * op_norm(g));
        CHECK(classify_basic(pf.left_positive).positive_definite);
        CHECK(classify_basic(pf.right_positive).positive_definite);
        const Matrix v = random_instance(InstanceKind::Unitary, n, seed + 1000);
        CHECK(op_norm(polar(Matrix(g * v)).unitary_part - pf.unitary_part * v) <= 1e-9 * condition_number(g));
    }
}

TEST_CASE("polar rejects singular input") {
    CHECK_THROWS_WITH_AS(polar(mat({{1, 1}, {1, 1}})), doctest::Contains("Singular"), Error);
}

TEST_CASE("classify_basic examples") {
    BasicReport r = classify_basic(identity(2));
    CHECK(r.hermitian);
    CHECK(r.positive_definite);
    CHECK(r.unitary);
    CHECK(r.reflection);
    CHECK(r.invertible);
    CHECK_FALSE(r.nilpotent);

    const Matrix jordan = mat({{1, 1}, {0, 1}});
    r = classify_basic(jordan);
    CHECK(r.invertible);
    CHECK_FALSE(r.hermitian);
    CHECK_FALSE(r.positive_definite);
    CHECK_FALSE(r.unitary);
    CHECK_FALSE(r.reflection);
    CHECK(classify_basic(jordan - identity(2)).nilpotent);

    r = classify_basic(mat({{0, 1}, {1, 0}}));
    CHECK(r.hermitian);
    CHECK(r.unitary);
    CHECK(r.reflection);
    CHECK_FALSE(r.positive_definite);
}

TEST_CASE("classify_basic flags the structure of each generated kind") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 6);
        CHECK(classify_basic(random_instance(InstanceKind::Unitary, n, seed)).unitary);
        CHECK(classify_basic(random_instance(InstanceKind::Hermitian, n, seed)).hermitian);
        CHECK(classify_basic(random_instance(InstanceKind::PositiveDefinite, n, seed)).positive_definite);
        const BasicReport rr = classify_basic(random_instance(InstanceKind::Reflection, n, seed));
        CHECK((rr.reflection && rr.unitary && rr.hermitian));
        CHECK(classify_basic(random_instance(InstanceKind::GeneralInvertible, n, seed)).invertible);
    }
}

TEST_CASE("random_instance conditioning and determinism") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Matrix p = random_instance(InstanceKind::PositiveDefinite, 4, seed, 100.0);
        const HermitianEigen e = eig_hermitian(p);
        CHECK(e.eigenvalues(0) >= 0.1 - 1e-12);
        CHECK(e.eigenvalues(3) / e.eigenvalues(0) <= 100.0 + 1e-9);

        const Matrix u = random_instance(InstanceKind::Unitary, 3, seed);
        CHECK(op_norm(u.adjoint() * u - identity(3)) <= 1e-12);
    }
    CHECK(random_instance(InstanceKind::Hermitian, 5, 42) == random_instance(InstanceKind::Hermitian, 5, 42));
    CHECK(random_instance(InstanceKind::Hermitian, 5, 42) != random_instance(InstanceKind::Hermitian, 5, 43));
    CHECK_THROWS_AS(random_instance(InstanceKind::Unitary, 0, 1), Error);
    CHECK_THROWS_AS(random_instance(InstanceKind::PositiveDefinite, 3, 1, 1.0), Error);
}

TEST_CASE("cluster_eigenvalues groups near-equal values") {
    RealVector v(5);
    v << 1.0, 1.0 + 1e-12, 2.0, 3.0, 3.0;
    const auto c = cluster_eigenvalues(v);
    REQUIRE(c.size() == 3);
    CHECK(c[0].size == 2);
    CHECK(c[1].size == 1);
    CHECK(c[2].first == 3);
    CHECK(c[2].size == 2);
}
