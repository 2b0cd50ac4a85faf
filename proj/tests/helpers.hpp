#ifndef SPINDISCORD_TEST_HELPERS_HPP
#define SPINDISCORD_TEST_HELPERS_HPP

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "spindiscord/xstate.hpp"

namespace testutil {

// Valid random real X state; populations Dirichlet-like, coherences drawn
// inside the positivity disk.
inline spindiscord::XStateDensity random_x_state(std::mt19937& rng,
                                                 bool symmetric = false) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> u11(-1.0, 1.0);
    double p[4];
    double sum = 0;
    for (double& x : p) {
        x = u01(rng) + 1e-6;
        sum += x;
    }
    for (double& x : p) x /= sum;
    if (symmetric) {
        const double mid = 0.5 * (p[1] + p[2]);
        p[1] = p[2] = mid;
    }
    spindiscord::XStateDensity rho{p[0], p[1], p[2], p[3], 0.0, 0.0};
    rho.c_outer = 0.999 * u11(rng) * std::sqrt(p[0] * p[3]);
    rho.c_inner = 0.999 * u11(rng) * std::sqrt(p[1] * p[2]);
    return rho;
}

// Zero-discord state of the classical form sum p_ij |i><i| x |j><j|, in an
// X-representable family: either both bases along z (a diagonal state) or
// both along x (a single-axis-correlated Bell-diagonal state).
inline spindiscord::XStateDensity random_classical_x_state(std::mt19937& rng) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    if (u01(rng) < 0.5) {
        double p[4];
        double sum = 0;
        for (double& x : p) {
            x = u01(rng);
            sum += x;
        }
        for (double& x : p) x /= sum;
        return {p[0], p[1], p[2], p[3], 0.0, 0.0};
    }
    // (1/4)(I + c sx.sx) = sum_ab p_ab |a_x b_x><a_x b_x|
    const double c = 2.0 * u01(rng) - 1.0;
    return spindiscord::XStateDensity::from_pair_correlators(0.0, c, 0.0, 0.0);
}

// Dense domain-wall XXZ Hamiltonian over the full 2^N space; independent of
// the sector-resolved sparse builder.
inline Eigen::MatrixXd dense_xxz_hamiltonian(int n, double delta, double h,
                                             double j = 1.0) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXd ham = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t s = 0; s < dim; ++s) {
        auto spin = [s](int site) { return (s >> (site - 1)) & 1u ? 1.0 : -1.0; };
        double diag = -h * (spin(1) - spin(n));
        for (int i = 1; i < n; ++i) {
            diag -= 0.5 * delta * spin(i) * spin(i + 1);
            const std::uint32_t bits = (s >> (i - 1)) & 3u;
            if (bits == 1u || bits == 2u) {
                const std::size_t t = s ^ (3u << (i - 1));
                ham(t, s) += -j;
            }
        }
        ham(s, s) += diag;
    }
    return ham;
}

}  // namespace testutil

#endif
