#ifndef SPINDISCORD_FIT_HPP
#define SPINDISCORD_FIT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "spindiscord/discord.hpp"
#include "spindiscord/errors.hpp"
#include "spindiscord/fitdata.hpp"
#include "spindiscord/parallel.hpp"
#include "spindiscord/xy.hpp"

namespace spindiscord {

namespace detail {

inline double decay_basis(DecayModel model, double n, double c) {
    return model == DecayModel::exponential ? std::exp(-c * n)
                                            : std::pow(n, -c);
}

// d basis / d c
inline double decay_basis_dc(DecayModel model, double n, double c) {
    return model == DecayModel::exponential ? -n * std::exp(-c * n)
                                            : -std::log(n) * std::pow(n, -c);
}

// Least-squares (a, b) for fixed c.
inline void linear_ab(const std::vector<DecaySample>& s, DecayModel model,
                      double c, double& a, double& b) {
    double sf = 0, sff = 0, sq = 0, sqf = 0;
    const double m = static_cast<double>(s.size());
    for (const auto& p : s) {
        const double f = decay_basis(model, p.n, c);
        sf += f;
        sff += f * f;
        sq += p.q;
        sqf += p.q * f;
    }
    const double det = m * sff - sf * sf;
    if (std::abs(det) < 1e-14 * std::max(1.0, m * sff)) {
        a = sq / m;  // basis nearly constant: plateau-only fit
        b = 0.0;
        return;
    }
    b = (m * sqf - sf * sq) / det;
    a = (sq - b * sf) / m;
}

inline double sse_of(const std::vector<DecaySample>& s, DecayModel model,
                     double a, double b, double c) {
    double sse = 0;
    for (const auto& p : s) {
        const double r = p.q - a - b * decay_basis(model, p.n, c);
        sse += r * r;
    }
    return sse;
}

// Damped Gauss-Newton on (a, b, u) with c = exp(u), which keeps the decay
// rate nonnegative.
inline FitResult gauss_newton(const std::vector<DecaySample>& s,
                              DecayModel model, double a, double b, double c) {
    const int m = static_cast<int>(s.size());
    FitResult fit;
    fit.model = model;
    double u = std::log(std::max(c, 1e-8));
    double sse = sse_of(s, model, a, b, std::exp(u));
    double mu = 1e-8;

    Eigen::MatrixXd jac(m, 3);
    Eigen::VectorXd res(m);
    for (int iter = 0; iter < 400; ++iter) {
        fit.iterations = iter + 1;
        const double cc = std::exp(u);
        for (int k = 0; k < m; ++k) {
            const double n = s[k].n;
            const double f = decay_basis(model, n, cc);
            res(k) = s[k].q - a - b * f;
            jac(k, 0) = 1.0;
            jac(k, 1) = f;
            jac(k, 2) = b * decay_basis_dc(model, n, cc) * cc;  // d/du
        }
        Eigen::Vector3d grad = jac.transpose() * res;
        if (grad.lpNorm<Eigen::Infinity>() < 1e-10) {
            fit.converged = true;
            break;
        }
        Eigen::Matrix3d jtj = jac.transpose() * jac;
        bool stepped = false;
        for (int damp = 0; damp < 40; ++damp) {
            Eigen::Matrix3d lhs = jtj;
            lhs.diagonal() += mu * jtj.diagonal().cwiseMax(1e-12);
            Eigen::Vector3d delta = lhs.ldlt().solve(grad);
            const double na = a + delta(0), nb = b + delta(1),
                         nu = u + delta(2);
            const double nsse = sse_of(s, model, na, nb, std::exp(nu));
            if (nsse <= sse) {
                const double drop = sse - nsse;
                a = na;
                b = nb;
                u = nu;
                sse = nsse;
                mu = std::max(mu * 0.3, 1e-12);
                stepped = true;
                if (drop < 1e-12 * std::max(sse, 1e-300)) fit.converged = true;
                break;
            }
            mu *= 4.0;
        }
        if (!stepped || fit.converged) break;
    }
    fit.a = a;
    fit.b = b;
    fit.c = std::exp(u);
    fit.sse = sse;
    return fit;
}

inline FitResult fit_decay(const DecayProfile& profile, DecayModel model) {
    if (profile.samples.size() < 4)
        throw PreconditionError("decay fits need at least 4 samples");
    auto samples = profile.samples;
    std::sort(samples.begin(), samples.end(),
              [](const DecaySample& x, const DecaySample& y) { return x.n < y.n; });
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].n == samples[i - 1].n)
            throw PreconditionError("duplicate distances in profile");

    FitResult best;
    best.sse = std::numeric_limits<double>::infinity();
    for (double c0 : {0.1, 0.5, 1.0, 2.0}) {
        double a, b;
        linear_ab(samples, model, c0, a, b);
        // gauss_newton only accepts descending steps, so the returned sse
        // never exceeds this start's linear-solve sse
        auto fit = gauss_newton(samples, model, a, b, c0);
        if (fit.sse < best.sse) best = fit;
    }

    const double m = static_cast<double>(samples.size());
    constexpr double k = 3.0;
    const double correction =
        (m - k - 1.0 > 0.0) ? 2.0 * k * m / (m - k - 1.0) : 2.0 * k * m;
    best.aic = m * std::log(std::max(best.sse, 1e-300) / m) + correction;
    return best;
}

}  // namespace detail

inline FitResult fit_exponential(const DecayProfile& profile) {
    return detail::fit_decay(profile, DecayModel::exponential);
}

inline FitResult fit_power_law(const DecayProfile& profile) {
    for (const auto& s : profile.samples)
        if (s.n < 1) throw PreconditionError("power-law fit needs distances >= 1");
    return detail::fit_decay(profile, DecayModel::power_law);
}

struct ModelSelection {
    FitResult exponential;
    FitResult power_law;
    DecayModel preferred = DecayModel::exponential;
    bool conclusive = true;
};

inline ModelSelection select_model(const DecayProfile& profile) {
    ModelSelection sel;
    sel.exponential = fit_exponential(profile);
    sel.power_law = fit_power_law(profile);
    const double diff = sel.exponential.aic - sel.power_law.aic;
    sel.conclusive = std::abs(diff) >= 1e-6;
    sel.preferred =
        diff <= 0.0 ? DecayModel::exponential : DecayModel::power_law;
    return sel;
}

// sum_{n=1..M} Q_n / (M Q_1): 1 for a flat profile, small for fast decay.
inline double range_ratio(const std::vector<double>& q_values) {
    if (q_values.empty()) throw PreconditionError("empty profile");
    if (q_values.front() <= 1e-12)
        throw UndefinedRatioError("Q at distance 1 vanishes");
    double sum = 0;
    for (double q : q_values) sum += q;
    return sum / (static_cast<double>(q_values.size()) * q_values.front());
}

// XY discord as a function of distance, closed-form path by default.
inline DecayProfile xy_discord_profile(
    const XYParams& params, int n_max, double tol = 1e-10,
    DiscordMethod method = DiscordMethod::closed_form) {
    GTable table(params, tol);
    table.ensure(-n_max - 1, n_max + 1);
    const double mz = magnetization(params, tol);
    DecayProfile profile;
    for (int n = 1; n <= n_max; ++n) {
        auto rho = build_pair_state(n, table, mz);
        profile.samples.push_back({n, quantum_discord(rho, method).discord});
    }
    return profile;
}

struct HeatmapScan {
    std::vector<double> gammas;
    std::vector<double> lambdas;
    std::vector<double> ratios;  // row-major over (gamma, lambda); NaN = masked

    double at(std::size_t gi, std::size_t li) const {
        return ratios[gi * lambdas.size() + li];
    }
};

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> xs;
    if (steps <= 1) return {lo};
    for (int i = 0; i < steps; ++i)
        xs.push_back(lo + (hi - lo) * i / (steps - 1));
    return xs;
}

}  // namespace detail

// Fig.-style range-ratio grid.  Cells where the ratio is undefined come
// back as NaN instead of aborting the scan.
inline HeatmapScan heatmap_scan(double gamma_min, double gamma_max,
                                int gamma_steps, double lambda_min,
                                double lambda_max, int lambda_steps, int m = 10,
                                double tol = 1e-10, int threads = 1) {
    if (gamma_steps < 1 || lambda_steps < 1 || m < 1)
        throw PreconditionError("heatmap needs steps >= 1 and M >= 1");
    HeatmapScan scan;
    scan.gammas = detail::linspace(gamma_min, gamma_max, gamma_steps);
    scan.lambdas = detail::linspace(lambda_min, lambda_max, lambda_steps);
    scan.ratios.assign(scan.gammas.size() * scan.lambdas.size(),
                       std::numeric_limits<double>::quiet_NaN());
    parallel_for(scan.ratios.size(), threads, [&](std::size_t cell) {
        const std::size_t gi = cell / scan.lambdas.size();
        const std::size_t li = cell % scan.lambdas.size();
        try {
            XYParams p{scan.gammas[gi], scan.lambdas[li]};
            auto profile = xy_discord_profile(p, m, tol);
            std::vector<double> qs;
            for (const auto& s : profile.samples) qs.push_back(s.q);
            scan.ratios[cell] = range_ratio(qs);
        } catch (const UndefinedRatioError&) {
            // masked cell
        }
    });
    return scan;
}

}  // namespace spindiscord

#endif
