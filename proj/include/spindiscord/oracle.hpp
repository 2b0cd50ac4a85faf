#ifndef SPINDISCORD_ORACLE_HPP
#define SPINDISCORD_ORACLE_HPP

// Brute-force reference implementations, used by the test suite only.
// Deliberately independent of the analytic XY path and of the discord-core
// measurement optimizer.

#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "spindiscord/discord.hpp"
#include "spindiscord/errors.hpp"
#include "spindiscord/lanczos.hpp"
#include "spindiscord/xy.hpp"

namespace spindiscord::oracle {

// Ground-state pair observables of the finite periodic XY chain of Eq.-(5)
// form, from the lowest state of the even parity sector (the thermal ground
// state is parity symmetric).  Site 0 and site `separation` are used.
inline PairObservables xy_finite_chain(double gamma, double lambda,
                                       int n_sites, int separation) {
    if (n_sites < 2 || n_sites > 14)
        throw PreconditionError("finite-chain oracle supports 2 <= N <= 14");
    if (separation < 1 || separation >= n_sites / 2 + 1)
        throw PreconditionError("separation must satisfy 1 <= n <= N/2");

    const std::size_t dim = std::size_t{1} << n_sites;
    const double hop_diff = -lambda;           // antiparallel neighbors
    const double hop_same = -lambda * gamma;   // parallel neighbors

    auto apply = [&](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        y.setZero();
        for (std::size_t s = 0; s < dim; ++s) {
            const double amp = x(s);
            if (amp == 0.0) continue;
            // field term: -sum sz
            const int ups = std::popcount(static_cast<std::uint32_t>(s));
            y(s) += -static_cast<double>(2 * ups - n_sites) * amp;
            for (int i = 0; i < n_sites; ++i) {
                const int j = (i + 1) % n_sites;
                const bool bi = (s >> i) & 1u, bj = (s >> j) & 1u;
                const std::size_t t = s ^ ((1u << i) | (1u << j));
                y(t) += (bi == bj ? hop_same : hop_diff) * amp;
            }
        }
    };

    // start in the even parity sector (even number of down spins)
    Eigen::VectorXd start = Eigen::VectorXd::Zero(dim);
    for (std::size_t s = 0; s < dim; ++s) {
        const int downs = n_sites - std::popcount(static_cast<std::uint32_t>(s));
        if ((downs & 1) == 0) start(s) = 1.0;
    }
    auto gs = lanczos_lowest(apply, start, 1000, 1e-11);
    const Eigen::VectorXd& psi = gs.eigenvector;

    const int n = separation;
    const std::size_t flip = (1u << 0) | (1u << n);
    PairObservables obs;
    obs.n = n;
    for (std::size_t s = 0; s < dim; ++s) {
        const double w = psi(s) * psi(s);
        const double s0 = (s & 1u) ? 1.0 : -1.0;
        const double sn = ((s >> n) & 1u) ? 1.0 : -1.0;
        obs.mz += w * s0;
        obs.gzz += w * s0 * sn;
        const double cross = psi(s) * psi(s ^ flip);
        obs.gxx += cross;
        obs.gyy += (s0 == sn ? -1.0 : 1.0) * cross;
    }
    return obs;
}

// Minimum conditional entropy over a dense 720 x 1440 (theta, phi) grid of
// projective measurements on the second qubit; no local refinement.
inline double brute_force_min_conditional_entropy(
    const Eigen::Matrix4cd& rho) {
    using cd = std::complex<double>;
    // T_M(a, a') = tr_b[ block(a, a') M ] for M in {I, sx, sy, sz}
    Eigen::Matrix2cd t_i = Eigen::Matrix2cd::Zero(), t_x = t_i, t_y = t_i,
                     t_z = t_i;
    for (int a = 0; a < 2; ++a) {
        for (int ap = 0; ap < 2; ++ap) {
            const cd b00 = rho(2 * a + 0, 2 * ap + 0);
            const cd b01 = rho(2 * a + 0, 2 * ap + 1);
            const cd b10 = rho(2 * a + 1, 2 * ap + 0);
            const cd b11 = rho(2 * a + 1, 2 * ap + 1);
            t_i(a, ap) = b00 + b11;
            t_x(a, ap) = b01 + b10;
            t_y(a, ap) = cd(0, 1) * (b01 - b10);
            t_z(a, ap) = b00 - b11;
        }
    }

    constexpr int kTheta = 720, kPhi = 1440;
    static const auto trig = [] {
        std::array<std::vector<double>, 2> t;
        for (int j = 0; j < kPhi; ++j) {
            const double phi = j * 2.0 * std::numbers::pi / kPhi;
            t[0].push_back(std::cos(phi));
            t[1].push_back(std::sin(phi));
        }
        return t;
    }();

    auto hbin = [](double x) {
        double h = 0;
        if (x > 0) h -= x * std::log2(x);
        if (x < 1) h -= (1 - x) * std::log2(1 - x);
        return h;
    };

    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kTheta; ++i) {
        const double theta = i * std::numbers::pi / kTheta;
        const double st = std::sin(theta), ct = std::cos(theta);
        for (int j = 0; j < kPhi; ++j) {
            const double u = st * trig[0][j], v = st * trig[1][j], w = ct;
            const Eigen::Matrix2cd dir = u * t_x + v * t_y + w * t_z;
            double total = 0;
            for (int sign : {+1, -1}) {
                const Eigen::Matrix2cd sigma =
                    0.5 * (t_i + static_cast<double>(sign) * dir);
                const double p = sigma.trace().real();
                if (p < 1e-14) continue;
                const double d = (sigma(0, 0) - sigma(1, 1)).real();
                const double off = std::norm(sigma(0, 1));
                const double r = std::sqrt(d * d + 4.0 * off);
                total += p * hbin(0.5 * (1.0 + r / p));
            }
            best = std::min(best, total);
        }
    }
    return best;
}

inline double entropy(const Eigen::MatrixXcd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    double s = 0;
    for (double e : es.eigenvalues())
        if (e > 1e-15) s -= e * std::log2(e);
    return s;
}

inline double brute_force_discord(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix2cd rho_a, rho_b;
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) {
            rho_a(a, ap) = rho(2 * a, 2 * ap) + rho(2 * a + 1, 2 * ap + 1);
            rho_b(a, ap) = rho(a, ap) + rho(a + 2, ap + 2);
        }
    const double mi = entropy(rho_a) + entropy(rho_b) - entropy(rho);
    const double j =
        entropy(rho_a) - brute_force_min_conditional_entropy(rho);
    return std::max(mi - j, 0.0);
}

inline double brute_force_discord(const XStateDensity& rho) {
    return brute_force_discord(Eigen::Matrix4cd(rho.matrix().cast<std::complex<double>>()));
}

}  // namespace spindiscord::oracle

#endif
