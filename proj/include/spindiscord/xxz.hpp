#ifndef SPINDISCORD_XXZ_HPP
#define SPINDISCORD_XXZ_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "spindiscord/errors.hpp"
#include "spindiscord/fitdata.hpp"
#include "spindiscord/discord.hpp"
#include "spindiscord/lanczos.hpp"
#include "spindiscord/xstate.hpp"

namespace spindiscord {

// Open XXZ chain with opposing boundary fields, H of the domain-wall model:
//   -(J/2) sum (sx sx + sy sy) - (D/2) sum sz sz - h (sz_1 - sz_N).
struct XXZSystem {
    int n_sites = 2;
    double delta = 0.0;
    double h_field = 0.0;
    double j_exchange = 1.0;
    static constexpr int kMaxSites = 24;

    void validate() const {
        if (n_sites < 2 || n_sites > kMaxSites)
            throw DomainError("n_sites must lie in [2, 24]");
        if (h_field < 0.0) throw DomainError("h_field must be nonnegative");
    }
};

// First-order transition field h_c = (1/2) sqrt(D^2 - 1), defined for D >= 1.
inline double critical_field(double delta) {
    if (delta < 1.0)
        throw DomainError("critical_field requires delta >= 1");
    return 0.5 * std::sqrt(delta * delta - 1.0);
}

// Basis of one total-magnetization sector.  Site k (1-based) maps to bit
// k-1; a set bit is spin up.  sz_total = (#up - #down).
struct SectorBasis {
    int n_sites = 0;
    int sz_total = 0;
    std::vector<std::uint32_t> states;  // sorted ascending

    static SectorBasis build(int n_sites, int n_up) {
        SectorBasis basis;
        basis.n_sites = n_sites;
        basis.sz_total = 2 * n_up - n_sites;
        for (std::uint32_t s = 0; s < (1u << n_sites); ++s)
            if (std::popcount(s) == static_cast<unsigned>(n_up))
                basis.states.push_back(s);
        return basis;
    }

    std::size_t index(std::uint32_t state) const {
        auto it = std::lower_bound(states.begin(), states.end(), state);
        if (it == states.end() || *it != state)
            throw PreconditionError("configuration not in sector");
        return static_cast<std::size_t>(it - states.begin());
    }

    std::size_t size() const { return states.size(); }
};

// Compressed-row symmetric sparse matrix (both triangles stored).
struct SparseSym {
    std::vector<std::size_t> row_ptr;
    std::vector<std::uint32_t> col;
    std::vector<double> val;
    std::size_t dim = 0;

    void multiply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
        y.setZero();
        for (std::size_t i = 0; i < dim; ++i) {
            double acc = 0.0;
            for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
                acc += val[k] * x(col[k]);
            y(i) = acc;
        }
    }

    Eigen::MatrixXd dense() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
                m(i, col[k]) += val[k];
        return m;
    }
};

inline SparseSym build_sector_hamiltonian(const XXZSystem& sys,
                                          const SectorBasis& basis) {
    sys.validate();
    const int n = sys.n_sites;
    SparseSym h;
    h.dim = basis.size();
    h.row_ptr.reserve(h.dim + 1);
    h.row_ptr.push_back(0);
    for (std::uint32_t s : basis.states) {
        auto spin = [s](int site) { return (s >> (site - 1)) & 1u ? 1.0 : -1.0; };
        double diag = 0.0;
        for (int i = 1; i < n; ++i) diag -= 0.5 * sys.delta * spin(i) * spin(i + 1);
        diag -= sys.h_field * (spin(1) - spin(n));
        h.col.push_back(static_cast<std::uint32_t>(basis.index(s)));
        h.val.push_back(diag);
        // hopping: adjacent antiparallel pair exchanges with amplitude -J
        for (int i = 1; i < n; ++i) {
            const std::uint32_t mask = 3u << (i - 1);
            const std::uint32_t bits = (s >> (i - 1)) & 3u;
            if (bits == 1u || bits == 2u) {
                h.col.push_back(static_cast<std::uint32_t>(basis.index(s ^ mask)));
                h.val.push_back(-sys.j_exchange);
            }
        }
        h.row_ptr.push_back(h.col.size());
    }
    return h;
}

struct GroundStateResult {
    double energy = 0;
    int sector = 0;  // sz_total
    SectorBasis basis;
    Eigen::VectorXd amplitudes;
    double residual_norm = 0;
    std::vector<std::pair<int, double>> degeneracy;  // (sector, energy) ties
    bool degenerate() const { return degeneracy.size() > 1; }
};

namespace detail {

struct SectorSolution {
    double energy;
    Eigen::VectorXd vec;
    double residual;
};

inline SectorSolution solve_sector(const SparseSym& h) {
    if (h.dim <= 64) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
        Eigen::VectorXd v = es.eigenvectors().col(0);
        Eigen::VectorXd hv(h.dim);
        h.multiply(v, hv);
        const double e = es.eigenvalues()(0);
        return {e, v, (hv - e * v).norm()};
    }
    Eigen::VectorXd start = Eigen::VectorXd::Ones(h.dim);
    auto apply = [&h](const Eigen::VectorXd& x, Eigen::VectorXd& y) {
        h.multiply(x, y);
    };
    auto res = lanczos_lowest(apply, start, 1000, 1e-11);
    return {res.eigenvalue, std::move(res.eigenvector), res.residual_norm};
}

}  // namespace detail

// Scan every magnetization sector and return the global ground state.
// Degenerate minima (relative tolerance 1e-9) are listed; the tie is broken
// toward lower |sz_total|, then lower sz_total.
inline GroundStateResult ground_state(const XXZSystem& sys) {
    sys.validate();
    struct Entry {
        int n_up;
        detail::SectorSolution sol;
    };
    std::vector<Entry> entries;
    double emin = std::numeric_limits<double>::infinity();
    for (int n_up = 0; n_up <= sys.n_sites; ++n_up) {
        auto basis = SectorBasis::build(sys.n_sites, n_up);
        auto h = build_sector_hamiltonian(sys, basis);
        entries.push_back({n_up, detail::solve_sector(h)});
        emin = std::min(emin, entries.back().sol.energy);
    }

    const double tol = 1e-9 * std::max(1.0, std::abs(emin));
    const Entry* pick = nullptr;
    GroundStateResult out;
    for (const auto& e : entries) {
        if (e.sol.energy - emin > tol) continue;
        const int sz = 2 * e.n_up - sys.n_sites;
        out.degeneracy.emplace_back(sz, e.sol.energy);
        if (!pick) {
            pick = &e;
            continue;
        }
        const int best_sz = 2 * pick->n_up - sys.n_sites;
        if (std::abs(sz) < std::abs(best_sz) ||
            (std::abs(sz) == std::abs(best_sz) && sz < best_sz))
            pick = &e;
    }
    out.energy = pick->sol.energy;
    out.sector = 2 * pick->n_up - sys.n_sites;
    out.basis = SectorBasis::build(sys.n_sites, pick->n_up);
    out.amplitudes = pick->sol.vec;
    out.residual_norm = pick->sol.residual;
    return out;
}

// Partial trace of |psi><psi| onto sites (site_i, site_j), 1-based,
// site_i < site_j.  The first qubit of the result is site_i.  For an
// Sz eigenstate the reduction is X-form with c_outer = 0; anything off the
// X pattern beyond 1e-12 flags an internal inconsistency.
inline XStateDensity pair_reduced_density(const GroundStateResult& gs,
                                          int site_i, int site_j) {
    const int n = gs.basis.n_sites;
    if (site_i < 1 || site_j <= site_i || site_j > n)
        throw PreconditionError("pair sites must satisfy 1 <= i < j <= N");

    const std::uint32_t mask_i = 1u << (site_i - 1);
    const std::uint32_t mask_j = 1u << (site_j - 1);
    // group amplitudes by the configuration of the remaining sites
    std::unordered_map<std::uint32_t, std::array<double, 4>> groups;
    for (std::size_t k = 0; k < gs.basis.states.size(); ++k) {
        const std::uint32_t s = gs.basis.states[k];
        // pair slot in {uu, ud, du, dd}: up is a set bit
        const int a = (s & mask_i) ? 0 : 1;
        const int b = (s & mask_j) ? 0 : 1;
        auto& slot = groups[s & ~(mask_i | mask_j)];
        slot[2 * a + b] += gs.amplitudes(k);
    }

    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    for (const auto& [rest, amps] : groups)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) rho(a, b) += amps[a] * amps[b];

    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            if (a != b && a + b != 3 && std::abs(rho(a, b)) > 1e-12)
                throw ConsistencyError("pair reduction is not X-form");

    XStateDensity x{rho(0, 0), rho(1, 1), rho(2, 2), rho(3, 3),
                    rho(0, 3), rho(1, 2)};
    if (std::abs(x.trace() - 1.0) > 1e-12)
        throw ConsistencyError("pair reduction trace differs from 1");
    return x;
}

// Discord of the pairs (N/2, N/2 + n) for n = 1..n_max, via the optimizer
// path.  The measured side defaults to the far qubit of each pair.
inline DecayProfile discord_profile(const XXZSystem& sys, int n_max,
                                    MeasuredQubit side = MeasuredQubit::second) {
    sys.validate();
    const int anchor = sys.n_sites / 2;
    if (n_max < 1 || anchor + n_max > sys.n_sites)
        throw PreconditionError("n_max exceeds the chain");
    auto gs = ground_state(sys);
    DecayProfile profile;
    profile.degenerate_source = gs.degenerate();
    for (int n = 1; n <= n_max; ++n) {
        auto rho = pair_reduced_density(gs, anchor, anchor + n);
        auto report = quantum_discord(rho, DiscordMethod::optimized, side);
        profile.samples.push_back({n, report.discord});
    }
    return profile;
}

inline int default_profile_depth(int n_sites) {
    return std::min(9, n_sites - n_sites / 2 - 1);
}

}  // namespace spindiscord

#endif
