#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "wpolar/weighted_calculus.hpp"

using namespace wpolar;
using wpolar::test::mat;
using wpolar::test::near;

TEST_CASE("make_weight caches roots") {
    const Weight unit = make_weight(identity(3));
    CHECK(near(unit.sqrt_a(), identity(3)));
    CHECK(near(unit.inv_sqrt_a(), identity(3)));
    CHECK(unit.kappa() == doctest::Approx(1.0));

    const Weight w = make_weight(mat({{4, 0}, {0, 9}}));
    CHECK(near(w.sqrt_a(), mat({{2, 0}, {0, 3}})));
    CHECK(near(w.inv_sqrt_a(), mat({{0.5, 0}, {0, 1.0 / 3.0}})));
    CHECK(w.kappa() == doctest::Approx(9.0 / 4.0));

    const Matrix a = mat({{2, 1}, {1, 2}});
    const Weight w2 = make_weight(a);
    CHECK(op_norm(w2.sqrt_a() * w2.sqrt_a() - a) <= 1e-12 * op_norm(a));
    CHECK(op_norm(w2.inv_a() * a - identity(2)) <= 1e-12);

    CHECK_THROWS_WITH_AS(make_weight(mat({{1, 0}, {0, -1}})), doctest::Contains("NotPositiveDefinite"), Error);
}

TEST_CASE("sharp_adjoint examples") {
    const Matrix x = mat({{0, 1}, {0, 0}});
    CHECK(near(sharp_adjoint(Weight::identity(2), x), x.adjoint()));
    // diag(1, 1/4) * [[0,0],[1,0]] * diag(1, 4)
    CHECK(near(sharp_adjoint(make_weight(mat({{1, 0}, {0, 4}})), x), mat({{0, 0}, {0.25, 0}})));
}

TEST_CASE("involution laws on random matrices") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 7);
        const Weight w = make_weight(random_instance(InstanceKind::PositiveDefinite, n, seed));
        const Matrix x = random_instance(InstanceKind::GeneralInvertible, n, seed + 1);
        const Matrix y = random_instance(InstanceKind::GeneralInvertible, n, seed + 2);
        const double tol = 1e-9 * w.kappa();
        CHECK(op_norm(sharp_adjoint(w, sharp_adjoint(w, x)) - x) <= tol * op_norm(x));
        CHECK(op_norm(sharp_adjoint(w, x * y) - sharp_adjoint(w, y) * sharp_adjoint(w, x)) <=
              tol * op_norm(x) * op_norm(y));
        const Matrix xi = x.inverse();
        CHECK(op_norm(sharp_adjoint(w, x).inverse() - sharp_adjoint(w, xi)) <=
              tol * condition_number(x) * op_norm(xi));
    }
}

TEST_CASE("weighted inner product and norm") {
    const Weight unit = Weight::identity(2);
    Vector xi(2), eta(2);
    xi << Complex(1, 2), Complex(0, -1);
    eta << Complex(3, 0), Complex(1, 1);
    CHECK(std::abs(weighted_inner(unit, xi, eta) - eta.dot(xi)) <= 1e-15);
    const Matrix x = mat({{1, 2}, {3, 4}});
    CHECK(weighted_op_norm(unit, x) == doctest::Approx(op_norm(x)));

    Vector e2 = Vector::Zero(2);
    e2(1) = 1.0;
    const Weight w = make_weight(mat({{1, 0}, {0, 4}}));
    CHECK(weighted_inner(w, e2, e2).real() == doctest::Approx(4.0));
    CHECK(weighted_inner(w, e2, e2).imag() == doctest::Approx(0.0));

    CHECK_THROWS_AS(weighted_inner(w, Vector::Ones(3), e2), Error);
}

TEST_CASE("adjoint identity <x xi, eta>_a = <xi, x^# eta>_a") {
    Rng rng(99);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 6);
        const Weight w = make_weight(random_instance(InstanceKind::PositiveDefinite, n, seed));
        const Matrix x = random_gaussian(rng, n, n);
        const Vector xi = random_gaussian(rng, n, 1).col(0);
        const Vector eta = random_gaussian(rng, n, 1).col(0);
        const Complex lhs = weighted_inner(w, x * xi, eta);
        const Complex rhs = weighted_inner(w, xi, sharp_adjoint(w, x) * eta);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * w.kappa() * op_norm(w.a()) * op_norm(x) * xi.norm() * eta.norm());
        CHECK(weighted_inner(w, xi, xi).real() > 0.0);
    }
}

TEST_CASE("weighted operator norm is the norm induced by <.,.>_a") {
    Rng rng(5);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 5);
        const Weight w = make_weight(random_instance(InstanceKind::PositiveDefinite, n, seed));
        const Matrix x = random_gaussian(rng, n, n);
        const double xa = weighted_op_norm(w, x);
        for (int i = 0; i < 200; ++i) {
            const Vector z = random_gaussian(rng, n, 1).col(0);
            CHECK(weighted_vector_norm(w, x * z) <= xa * weighted_vector_norm(w, z) * (1.0 + 1e-12));
        }
        // the maximiser is a^{-1/2} times the top right singular vector of a^{1/2} x a^{-1/2}
        Eigen::JacobiSVD<Matrix> svd(w.sqrt_a() * x * w.inv_sqrt_a(), Eigen::ComputeFullV);
        const Vector best = w.inv_sqrt_a() * svd.matrixV().col(0);
        CHECK(weighted_vector_norm(w, x * best) / weighted_vector_norm(w, best) == doctest::Approx(xa).epsilon(1e-12));
    }
}

TEST_CASE("phi carries the standard classes onto the weighted ones") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 7);
        const Weight w = make_weight(random_instance(InstanceKind::PositiveDefinite, n, seed));
        const Matrix u = random_instance(InstanceKind::Unitary, n, seed + 1);
        const Matrix p = random_instance(InstanceKind::PositiveDefinite, n, seed + 2);
        const Matrix x = random_instance(InstanceKind::GeneralInvertible, n, seed + 3);
        CHECK(classify_weighted(w, phi(w, u)).a_unitary);
        CHECK(classify_weighted(w, phi(w, p)).a_positive);
        CHECK(op_norm(phi_inv(w, phi(w, x)) - x) <= 1e-9 * w.kappa() * op_norm(x));
        CHECK(op_norm(sharp_adjoint(w, phi(w, x)) - phi(w, x.adjoint())) <= 1e-9 * w.kappa() * op_norm(x));
    }
    const Matrix x = mat({{1, 2}, {3, 4}});
    CHECK(near(phi(Weight::identity(2), x), x));
}

TEST_CASE("classify_weighted examples") {
    const Weight w = make_weight(mat({{1, 0}, {0, 4}}));
    ClassVerdict v = classify_weighted(w, identity(2));
    CHECK(v.a_unitary);
    CHECK(v.a_hermitian);
    CHECK(v.a_positive);

    // phi(w, swap) = diag(1, 1/2) [[0,1],[1,0]] diag(1, 2)
    const Matrix g = phi(w, mat({{0, 1}, {1, 0}}));
    CHECK(near(g, mat({{0, 2}, {0.5, 0}})));
    v = classify_weighted(w, g);
    CHECK(v.a_unitary);
    CHECK(v.a_hermitian);
    CHECK_FALSE(v.a_positive);

    // a positive matrix that does not commute with a
    const Matrix p = mat({{2, 1}, {1, 2}});
    v = classify_weighted(w, p);
    CHECK_FALSE(v.a_hermitian);
    CHECK_FALSE(v.a_positive);
    CHECK(v.residuals.at("a_hermitian") > 0.1);

    CHECK_THROWS_WITH_AS(classify_weighted(w, mat({{1, 1}, {1, 1}})), doctest::Contains("Singular"), Error);
}

TEST_CASE("classify_weighted agrees with classify_basic through phi") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 7);
        const Weight w = make_weight(random_instance(InstanceKind::PositiveDefinite, n, seed));
        for (auto kind : {InstanceKind::Unitary, InstanceKind::Hermitian, InstanceKind::PositiveDefinite,
                          InstanceKind::Reflection, InstanceKind::GeneralInvertible}) {
            const Matrix g = phi(w, random_instance(kind, n, seed * 7 + static_cast<std::uint64_t>(kind)));
            const ClassVerdict cv = classify_weighted(w, g);
            const BasicReport br = classify_basic(phi_inv(w, g));
            CHECK(cv.a_unitary == br.unitary);
            CHECK(cv.a_hermitian == br.hermitian);
            CHECK(cv.a_positive == br.positive_definite);
            if (cv.a_positive) CHECK(cv.a_hermitian);
        }
    }
}

TEST_CASE("a-orthogonal projection examples") {
    Matrix e1 = Matrix::Zero(2, 1);
    e1(0, 0) = 1.0;
    WeightedProjection proj = a_orthogonal_projection(Weight::identity(2), e1);
    CHECK(near(proj.q, mat({{1, 0}, {0, 0}})));
    CHECK(near(proj.reflection, mat({{1, 0}, {0, -1}})));

    // M* a M = 3, q = M M* a / 3
    const Weight w = make_weight(mat({{1, 0}, {0, 2}}));
    proj = a_orthogonal_projection(w, Matrix::Ones(2, 1));
    CHECK(near(proj.q, mat({{1.0 / 3, 2.0 / 3}, {1.0 / 3, 2.0 / 3}})));
    CHECK(near(proj.q * proj.q, proj.q));
    CHECK(near(sharp_adjoint(w, proj.q), proj.q));

    const Weight wr = make_weight(random_instance(InstanceKind::PositiveDefinite, 4, 3));
    proj = a_orthogonal_projection(wr, random_instance(InstanceKind::GeneralInvertible, 4, 4));
    CHECK(near(proj.q, identity(4), 1e-10));
    CHECK(near(proj.reflection, identity(4), 1e-10));
}

TEST_CASE("a-orthogonal projection invariants") {
    Rng rng(17);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Eigen::Index n = 2 + static_cast<Eigen::Index>(seed % 6);
        const Eigen::Index k = 1 + static_cast<Eigen::Index>(seed % static_cast<std::uint64_t>(n));
        const Weight w = make_weight(random_instance(InstanceKind::PositiveDefinite, n, seed));
        const Matrix m = random_gaussian(rng, n, k);
        const WeightedProjection proj = a_orthogonal_projection(w, m);
        const double tol = 1e-9 * w.kappa() * std::max(1.0, op_norm(proj.q));
        CHECK(op_norm(proj.q * proj.q - proj.q) <= tol);
        CHECK(op_norm(sharp_adjoint(w, proj.q) - proj.q) <= tol);
        CHECK(op_norm(proj.reflection * proj.reflection - identity(n)) <= 4 * tol);
        CHECK(op_norm(sharp_adjoint(w, proj.reflection) - proj.reflection) <= 2 * tol);
        CHECK(op_norm(proj.q * m - m) <= tol * op_norm(m));
        const Vector xi = random_gaussian(rng, n, 1).col(0);
        const Vector resid = proj.q * xi - xi;
        for (Eigen::Index j = 0; j < k; ++j)
            CHECK(std::abs(weighted_inner(w, resid, m.col(j))) <= tol * op_norm(w.a()) * xi.norm() * m.col(j).norm());
    }
}

TEST_CASE("a-orthogonal projection rejects rank-deficient bases") {
    const Weight w = Weight::identity(3);
    Matrix m(3, 2);
    m << 1, 2, 1, 2, 1, 2;
    CHECK_THROWS_WITH_AS(a_orthogonal_projection(w, m), doctest::Contains("RankDeficient"), Error);
}
