#ifndef SPINDISCORD_LANCZOS_HPP
#define SPINDISCORD_LANCZOS_HPP

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "spindiscord/errors.hpp"

namespace spindiscord {

struct LanczosResult {
    double eigenvalue = 0;
    Eigen::VectorXd eigenvector;
    double residual_norm = 0;
    int iterations = 0;
};

// Lowest eigenpair of a symmetric operator by Lanczos iteration with full
// reorthogonalization.  `apply` maps (const VectorXd&, VectorXd&) -> void.
// The start vector fixes the Krylov space; callers pass a deterministic one
// so runs are reproducible.
template <class Apply>
LanczosResult lanczos_lowest(Apply&& apply, const Eigen::VectorXd& start,
                             int max_iter = 1000, double tol = 1e-11) {
    const Eigen::Index dim = start.size();
    if (dim == 0) throw PreconditionError("empty start vector");

    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alpha, beta;  // beta[j] couples basis[j] and basis[j+1]

    Eigen::VectorXd v = start.normalized();
    Eigen::VectorXd w(dim);
    basis.push_back(v);

    LanczosResult result;
    Eigen::VectorXd ritz;
    double theta = 0.0;

    const int iter_cap = std::min<int>(max_iter, static_cast<int>(dim));
    for (int j = 0; j < iter_cap; ++j) {
        apply(basis[j], w);
        if (j > 0) w -= beta[j - 1] * basis[j - 1];
        const double a = basis[j].dot(w);
        alpha.push_back(a);
        w -= a * basis[j];
        // full reorthogonalization, two passes
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) w -= q.dot(w) * q;
        const double b = w.norm();

        // Ritz estimate from the tridiagonal
        const int m = static_cast<int>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        theta = es.eigenvalues()(0);
        ritz = es.eigenvectors().col(0);
        result.iterations = m;

        const double est = b * std::abs(ritz(m - 1));
        if (est < 0.1 * tol || b < 1e-14 || m == dim) {
            // assemble the Ritz vector and check the true residual
            Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
            for (int i = 0; i < m; ++i) x += ritz(i) * basis[i];
            x.normalize();
            apply(x, w);
            const double res = (w - theta * x).norm();
            result.eigenvalue = theta;
            result.eigenvector = std::move(x);
            result.residual_norm = res;
            if (res < tol || b < 1e-14 || m == dim) return result;
        }
        if (b < 1e-14 || m == dim) break;

        beta.push_back(b);
        basis.push_back(w / b);
    }

    if (result.eigenvector.size() == 0) {
        const int m = static_cast<int>(alpha.size());
        Eigen::VectorXd x = Eigen::VectorXd::Zero(dim);
        for (int i = 0; i < m; ++i) x += ritz(i) * basis[i];
        x.normalize();
        apply(x, w);
        result.eigenvalue = theta;
        result.residual_norm = (w - theta * x).norm();
        result.eigenvector = std::move(x);
    }
    if (result.residual_norm >= 1e-10)
        throw ConvergenceError("Lanczos did not reach the requested residual",
                               result.residual_norm);
    return result;
}

}  // namespace spindiscord

#endif
