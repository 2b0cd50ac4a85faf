#ifndef SPINDISCORD_XSTATE_HPP
#define SPINDISCORD_XSTATE_HPP

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "spindiscord/errors.hpp"

namespace spindiscord {

// Two-qubit density operator of X form with real coherences, in the
// computational basis ordered {up-up, up-down, down-up, down-down}.
// This covers both the translation-invariant XY pair states and the
// Sz-conserving XXZ pair states (which have c_outer = 0).
struct XStateDensity {
    double p_uu = 0, p_ud = 0, p_du = 0, p_dd = 0;
    double c_outer = 0;  // <uu|rho|dd>
    double c_inner = 0;  // <ud|rho|du>

    double trace() const { return p_uu + p_ud + p_du + p_dd; }

    // Local magnetizations <sigma_z> of the first and second qubit.
    double mz_a() const { return p_uu + p_ud - p_du - p_dd; }
    double mz_b() const { return p_uu - p_ud + p_du - p_dd; }

    bool symmetric(double tol = 1e-12) const {
        return std::abs(p_ud - p_du) <= tol;
    }

    // Swap the two qubits.
    XStateDensity swapped() const {
        return {p_uu, p_du, p_ud, p_dd, c_outer, c_inner};
    }

    // Eigenvalues: the {uu, dd} block and the {ud, du} block diagonalize
    // independently.
    std::array<double, 4> eigenvalues() const {
        const double so = 0.5 * (p_uu + p_dd);
        const double ro = std::hypot(0.5 * (p_uu - p_dd), c_outer);
        const double si = 0.5 * (p_ud + p_du);
        const double ri = std::hypot(0.5 * (p_ud - p_du), c_inner);
        return {so + ro, so - ro, si + ri, si - ri};
    }

    void validate(double tol = 1e-12) const {
        if (std::abs(trace() - 1.0) > tol)
            throw ConsistencyError("X state trace differs from 1");
        for (double e : eigenvalues())
            if (e < -tol) throw ConsistencyError("X state not positive semidefinite");
    }

    Eigen::Matrix4d matrix() const {
        Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
        m(0, 0) = p_uu;
        m(1, 1) = p_ud;
        m(2, 2) = p_du;
        m(3, 3) = p_dd;
        m(0, 3) = m(3, 0) = c_outer;
        m(1, 2) = m(2, 1) = c_inner;
        return m;
    }

    // Assemble the translation-invariant pair state
    //   (1/4)[I + mz (sz x I + I x sz) + gxx sx.sx + gyy sy.sy + gzz sz.sz].
    static XStateDensity from_pair_correlators(double mz, double gxx,
                                               double gyy, double gzz) {
        XStateDensity rho;
        rho.p_uu = 0.25 * (1.0 + 2.0 * mz + gzz);
        rho.p_ud = 0.25 * (1.0 - gzz);
        rho.p_du = rho.p_ud;
        rho.p_dd = 0.25 * (1.0 - 2.0 * mz + gzz);
        rho.c_outer = 0.25 * (gxx - gyy);
        rho.c_inner = 0.25 * (gxx + gyy);
        return rho;
    }

    // Inverse of from_pair_correlators; valid for symmetric states.
    void to_pair_correlators(double& mz, double& gxx, double& gyy,
                             double& gzz) const {
        mz = 0.5 * (mz_a() + mz_b());
        gxx = 2.0 * (c_inner + c_outer);
        gyy = 2.0 * (c_inner - c_outer);
        gzz = p_uu - p_ud - p_du + p_dd;
    }
};

}  // namespace spindiscord

#endif
