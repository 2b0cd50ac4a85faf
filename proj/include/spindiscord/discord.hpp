#ifndef SPINDISCORD_DISCORD_HPP
#define SPINDISCORD_DISCORD_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include "spindiscord/errors.hpp"
#include "spindiscord/xstate.hpp"

namespace spindiscord {

inline double binary_entropy(double x) {
    if (x < -1e-12 || x > 1.0 + 1e-12)
        throw DomainError("binary_entropy argument outside [0, 1]");
    x = std::clamp(x, 0.0, 1.0);
    double h = 0.0;
    if (x > 0.0) h -= x * std::log2(x);
    if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
    return h;
}

inline double entropy_of_spectrum(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double e : eigenvalues) {
        if (e < -1e-12) throw DomainError("negative eigenvalue in spectrum");
        if (e > 0.0) s -= e * std::log2(e);
    }
    return s;
}

inline double von_neumann_entropy(const XStateDensity& rho) {
    return entropy_of_spectrum(rho.eigenvalues());
}

// Eigenvalues {xi_0, xi_1, eta_0, eta_1} of the symmetric pair state built
// from (mz, gxx, gyy, gzz): the closed form used for S(rho_0n).
inline std::array<double, 4> pair_spectrum(double mz, double gxx, double gyy,
                                           double gzz) {
    const double outer = 0.25 * std::sqrt((gxx - gyy) * (gxx - gyy) + 4.0 * mz * mz);
    const double xi0 = 0.25 * (1.0 + gzz) + outer;
    const double xi1 = 0.25 * (1.0 + gzz) - outer;
    const double eta0 = 0.25 * (1.0 - gzz + (gxx + gyy));
    const double eta1 = 0.25 * (1.0 - gzz - (gxx + gyy));
    return {xi0, xi1, eta0, eta1};
}

inline std::array<double, 4> pair_spectrum(const XStateDensity& rho) {
    if (!rho.symmetric())
        throw PreconditionError(
            "pair_spectrum requires equal local magnetizations; use the "
            "direct eigensolve");
    double mz, gxx, gyy, gzz;
    rho.to_pair_correlators(mz, gxx, gyy, gzz);
    return pair_spectrum(mz, gxx, gyy, gzz);
}

inline double mutual_information(const XStateDensity& rho) {
    const double sa = binary_entropy(0.5 * (1.0 + rho.mz_a()));
    const double sb = binary_entropy(0.5 * (1.0 + rho.mz_b()));
    return sa + sb - von_neumann_entropy(rho);
}

// Bloch direction of the projector pair {P+, P-} on the measured qubit.
struct Measurement {
    double theta = 0.5 * std::numbers::pi;  // polar angle in [0, pi]
    double phi_az = 0.0;                    // azimuth in [0, 2 pi)
};

enum class MeasuredQubit { first, second };

namespace detail {

// Average post-measurement entropy of the unmeasured qubit, for the
// projector along +/-(u, v, w) applied to the second qubit.  Conditional
// states follow from tracing the b blocks of rho against the projector:
//   s00 = [p_uu (1+w) + p_ud (1-w)]/2,  s11 = [p_du (1+w) + p_dd (1-w)]/2,
//   s01 = [c_outer (u+iv) + c_inner (u-iv)]/2.
inline double conditional_entropy_direction(const XStateDensity& rho, double u,
                                            double v, double w) {
    double total = 0.0;
    for (int sign : {+1, -1}) {
        const double su = sign * u, sv = sign * v, sw = sign * w;
        const double s00 = 0.5 * (rho.p_uu * (1.0 + sw) + rho.p_ud * (1.0 - sw));
        const double s11 = 0.5 * (rho.p_du * (1.0 + sw) + rho.p_dd * (1.0 - sw));
        const double re = 0.5 * su * (rho.c_outer + rho.c_inner);
        const double im = 0.5 * sv * (rho.c_outer - rho.c_inner);
        const double p = s00 + s11;
        if (p < 1e-14) continue;  // degenerate outcome contributes nothing
        const double r = std::sqrt((s00 - s11) * (s00 - s11) +
                                   4.0 * (re * re + im * im));
        total += p * binary_entropy(0.5 * (1.0 + r / p));
    }
    return total;
}

}  // namespace detail

inline double conditional_entropy_after(const XStateDensity& rho,
                                        const Measurement& m,
                                        MeasuredQubit side = MeasuredQubit::second) {
    const XStateDensity& r =
        (side == MeasuredQubit::second) ? rho : rho.swapped();
    const double st = std::sin(m.theta);
    return detail::conditional_entropy_direction(
        r, st * std::cos(m.phi_az), st * std::sin(m.phi_az), std::cos(m.theta));
}

inline double entropy_of_unmeasured(const XStateDensity& rho,
                                    MeasuredQubit side) {
    return binary_entropy(0.5 * (1.0 + (side == MeasuredQubit::second
                                            ? rho.mz_a()
                                            : rho.mz_b())));
}

struct ClosedFormResult {
    double classical_corr = 0;
    double p1 = 0, p2 = 0;
};

// J for a symmetric real X state with |gxx| >= |gyy|, where the minimum is
// attained by the {|+>, |->} projectors:  J = H(p1) - H(p2) with
// p1 = (1 + mz)/2 and p2 = (1 + sqrt(gxx^2 + mz^2))/2.
inline ClosedFormResult classical_correlation_closed_form(
    const XStateDensity& rho) {
    if (!rho.symmetric(1e-10))
        throw PreconditionError("closed form requires a symmetric X state");
    double mz, gxx, gyy, gzz;
    rho.to_pair_correlators(mz, gxx, gyy, gzz);
    if (std::abs(gxx) < std::abs(gyy) - 1e-12)
        throw PreconditionError(
            "closed form requires |gxx| >= |gyy|; use the optimizer path");
    ClosedFormResult out;
    out.p1 = 0.5 * (1.0 + mz);
    out.p2 = 0.5 * (1.0 + std::sqrt(gxx * gxx + mz * mz));
    out.classical_corr = binary_entropy(out.p1) - binary_entropy(out.p2);
    return out;
}

struct OptimizedResult {
    double classical_corr = 0;
    Measurement minimizer;
};

// J by deterministic minimization of the post-measurement entropy: a coarse
// 64x128 grid over (theta, phi) that contains (pi/2, 0), then pattern-search
// refinement down to angular steps of 1e-6.
inline OptimizedResult classical_correlation_optimized(
    const XStateDensity& rho, MeasuredQubit side = MeasuredQubit::second) {
    constexpr int kThetaDiv = 64, kPhiDiv = 128;
    const double pi = std::numbers::pi;

    Measurement best;
    double best_s = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= kThetaDiv; ++i) {
        for (int j = 0; j < kPhiDiv; ++j) {
            Measurement m{i * pi / kThetaDiv, j * 2.0 * pi / kPhiDiv};
            const double s = conditional_entropy_after(rho, m, side);
            if (s < best_s) {
                best_s = s;
                best = m;
            }
        }
    }

    double step = pi / kThetaDiv;
    while (step > 1e-6) {
        bool moved = false;
        const Measurement candidates[4] = {
            {best.theta + step, best.phi_az},
            {best.theta - step, best.phi_az},
            {best.theta, best.phi_az + step},
            {best.theta, best.phi_az - step}};
        for (const auto& m : candidates) {
            if (m.theta < 0.0 || m.theta > pi) continue;
            const double s = conditional_entropy_after(rho, m, side);
            if (s < best_s) {
                best_s = s;
                best = m;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }

    return {entropy_of_unmeasured(rho, side) - best_s, best};
}

enum class DiscordMethod { closed_form, optimized };

struct CorrelationReport {
    double mutual_info = 0;
    double classical_corr = 0;
    double discord = 0;
    Measurement minimizing_measurement;
    DiscordMethod method = DiscordMethod::optimized;
};

inline CorrelationReport quantum_discord(
    const XStateDensity& rho, DiscordMethod method = DiscordMethod::optimized,
    MeasuredQubit side = MeasuredQubit::second) {
    CorrelationReport report;
    report.method = method;
    report.mutual_info = mutual_information(rho);
    if (method == DiscordMethod::closed_form) {
        report.classical_corr = classical_correlation_closed_form(rho).classical_corr;
        report.minimizing_measurement = {0.5 * std::numbers::pi, 0.0};
    } else {
        auto opt = classical_correlation_optimized(rho, side);
        report.classical_corr = opt.classical_corr;
        report.minimizing_measurement = opt.minimizer;
    }
    double q = report.mutual_info - report.classical_corr;
    if (q < 0.0) {
        if (q < -1e-9) throw ConsistencyError("negative discord beyond tolerance");
        q = 0.0;
    }
    report.discord = q;
    return report;
}

}  // namespace spindiscord

#endif
