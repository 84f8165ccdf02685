#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Dense>

namespace wpolar::test {

// Real 2x2 positive X = L L^T with L = [[l0, 0], [l1, l2]], driven to X a X = b by
// damped Gauss-Newton with a forward-difference Jacobian. No spectral calculus.
struct Brute {
    Eigen::Matrix2d a, b;

    static Eigen::Matrix2d x_of(const Eigen::Vector3d& p) {
        Eigen::Matrix2d l;
        l << p(0), 0, p(1), p(2);
        return l * l.transpose();
    }
    Eigen::Vector3d resid(const Eigen::Vector3d& p) const {
        const Eigen::Matrix2d x = x_of(p);
        const Eigen::Matrix2d r = x * a * x - b;
        return {r(0, 0), r(0, 1), r(1, 1)};
    }
    std::optional<Eigen::Matrix2d> solve(Eigen::Vector3d p) const {
        double lambda = 1e-3;
        Eigen::Vector3d r = resid(p);
        for (int it = 0; it < 500 && r.norm() > 1e-14; ++it) {
            Eigen::Matrix3d jac;
            for (int j = 0; j < 3; ++j) {
                Eigen::Vector3d q = p;
                const double h = 1e-7 * std::max(1.0, std::abs(p(j)));
                q(j) += h;
                jac.col(j) = (resid(q) - r) / h;
            }
            const Eigen::Matrix3d jtj = jac.transpose() * jac;
            const Eigen::Vector3d step =
                (jtj + lambda * Eigen::Matrix3d(jtj.diagonal().asDiagonal())).ldlt().solve(-jac.transpose() * r);
            const Eigen::Vector3d r2 = resid(p + step);
            if (r2.norm() < r.norm()) {
                p += step;
                r = r2;
                lambda = std::max(lambda / 3, 1e-12);
            } else {
                lambda *= 4;
            }
        }
        if (r.norm() > 1e-10 * b.norm()) return std::nullopt;
        return x_of(p);
    }
};

}  // namespace wpolar::test
