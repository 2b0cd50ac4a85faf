#ifndef SPINDISCORD_XY_HPP
#define SPINDISCORD_XY_HPP

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>

#include <Eigen/Dense>

#include "spindiscord/errors.hpp"
#include "spindiscord/quadrature.hpp"
#include "spindiscord/xstate.hpp"

namespace spindiscord {

// Parameters of the anisotropic XY chain in a transverse field, in the
// thermodynamic limit.  beta == infinity selects the T -> 0 mode, in which
// the thermal tanh factor is identically 1.
struct XYParams {
    double gamma = 1.0;   // in-plane anisotropy, 0 <= gamma <= 1
    double lambda = 1.0;  // inverse transverse field, lambda >= 0
    double beta = std::numeric_limits<double>::infinity();

    bool zero_temperature() const { return std::isinf(beta); }

    void validate() const {
        if (gamma < 0.0 || gamma > 1.0)
            throw DomainError("gamma must lie in [0, 1]");
        if (lambda < 0.0) throw DomainError("lambda must be nonnegative");
        if (!(beta > 0.0)) throw DomainError("beta must be positive");
    }
};

// Quasiparticle dispersion omega_phi = (1/2) sqrt((g l sin)^2 + (1 + l cos)^2).
inline double dispersion(double phi, const XYParams& p) {
    const double s = p.gamma * p.lambda * std::sin(phi);
    const double c = 1.0 + p.lambda * std::cos(phi);
    return 0.5 * std::hypot(s, c);
}

namespace detail {

inline double thermal_weight(double omega, const XYParams& p) {
    // tanh(beta w)/(2 pi w), with the T -> 0 limit 1/(2 pi w).  The w -> 0
    // point is removable in every integrand that uses this weight; the
    // caller multiplies by a factor that vanishes at least as fast.
    if (p.zero_temperature()) return 1.0 / (2.0 * std::numbers::pi * omega);
    if (omega < 1e-300) return p.beta / (2.0 * std::numbers::pi);
    return std::tanh(p.beta * omega) / (2.0 * std::numbers::pi * omega);
}

// The dispersion vanishes at phi = pi when lambda = 1; keep a forced panel
// edge just short of it so the error estimator sees the steep region.
inline std::vector<double> xy_breakpoints() {
    return {std::numbers::pi - 1e-6};
}

}  // namespace detail

// Transverse magnetization density <sigma_z> (Appendix-A sign convention:
// -1 at lambda = 0).
inline double magnetization(const XYParams& p, double tol = 1e-10) {
    p.validate();
    auto integrand = [&p](double phi) {
        const double c = 1.0 + p.lambda * std::cos(phi);
        const double omega = dispersion(phi, p);
        if (omega < 1e-300) return 0.0;  // removable endpoint
        return c * detail::thermal_weight(omega, p);
    };
    return -integrate_adaptive(integrand, 0.0, std::numbers::pi, tol,
                               detail::xy_breakpoints())
                .value;
}

// Jordan-Wigner string coefficient G_n.
inline double g_coefficient(int n, const XYParams& p, double tol = 1e-10) {
    p.validate();
    auto integrand = [&p, n](double phi) {
        const double omega = dispersion(phi, p);
        if (omega < 1e-300) return 0.0;
        const double num = std::cos(n * phi) * (1.0 + p.lambda * std::cos(phi)) -
                           p.gamma * p.lambda * std::sin(n * phi) * std::sin(phi);
        return num * detail::thermal_weight(omega, p);
    };
    return integrate_adaptive(integrand, 0.0, std::numbers::pi, tol,
                              detail::xy_breakpoints())
        .value;
}

// Cache of G_n values for one (params, tolerance).  Concurrent readers are
// fine; inserts are serialized internally.
class GTable {
  public:
    explicit GTable(XYParams params, double tol = 1e-10)
        : params_(params), tol_(tol) {
        params_.validate();
    }

    const XYParams& params() const { return params_; }
    double tolerance() const { return tol_; }

    // Compute (and cache) all indices in [lo, hi].
    void ensure(int lo, int hi) const {
        for (int k = lo; k <= hi; ++k) get(k);
    }

    // Cached value, computing on demand.
    double get(int k) const {
        {
            std::shared_lock lock(mutex_);
            if (auto it = values_.find(k); it != values_.end()) return it->second;
        }
        const double v = g_coefficient(k, params_, tol_);
        std::unique_lock lock(mutex_);
        return values_.emplace(k, v).first->second;
    }

    // Strict lookup; throws when the entry was never computed.
    double at(int k) const {
        std::shared_lock lock(mutex_);
        auto it = values_.find(k);
        if (it == values_.end())
            throw PreconditionError("G-table does not cover index " +
                                    std::to_string(k));
        return it->second;
    }

  private:
    XYParams params_;
    double tol_;
    mutable std::map<int, double> values_;
    mutable std::shared_mutex mutex_;
};

namespace detail {

inline double toeplitz_determinant(int n, const GTable& table, int offset) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = table.at(i - j + offset);
    if (n == 1) return m(0, 0);
    return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

}  // namespace detail

// <sx_0 sx_n>: n x n Toeplitz determinant with entries G_{i-j-1}.
// Requires the table to cover [-n, n-2].
inline double xx_correlator(int n, const GTable& table) {
    if (n < 1) throw PreconditionError("separation must be >= 1");
    return detail::toeplitz_determinant(n, table, -1);
}

// <sy_0 sy_n>: entries G_{i-j+1}; table must cover [-n+2, n].
inline double yy_correlator(int n, const GTable& table) {
    if (n < 1) throw PreconditionError("separation must be >= 1");
    return detail::toeplitz_determinant(n, table, +1);
}

// <sz_0 sz_n> = <sz>^2 - G_n G_{-n}.
inline double zz_correlator(int n, double mz, const GTable& table) {
    if (n < 1) throw PreconditionError("separation must be >= 1");
    return mz * mz - table.at(n) * table.at(-n);
}

struct PairObservables {
    double mz = 0;
    double gxx = 0, gyy = 0, gzz = 0;
    int n = 0;
};

inline PairObservables pair_observables(int n, const GTable& table,
                                        double mz) {
    table.ensure(-n, n);
    PairObservables obs;
    obs.n = n;
    obs.mz = mz;
    obs.gxx = xx_correlator(n, table);
    obs.gyy = yy_correlator(n, table);
    obs.gzz = zz_correlator(n, mz, table);
    return obs;
}

// Reduced state of spins (0, n) of the thermal ground state.
inline XStateDensity build_pair_state(int n, const GTable& table, double mz) {
    if (n < 1) throw PreconditionError("separation must be >= 1");
    const auto obs = pair_observables(n, table, mz);
    auto rho =
        XStateDensity::from_pair_correlators(obs.mz, obs.gxx, obs.gyy, obs.gzz);
    rho.validate(1e-12);
    return rho;
}

inline XStateDensity build_pair_state(int n, const XYParams& params,
                                      double tol = 1e-10) {
    GTable table(params, tol);
    return build_pair_state(n, table, magnetization(params, tol));
}

}  // namespace spindiscord

#endif
