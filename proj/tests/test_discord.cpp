#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "helpers.hpp"
#include "spindiscord/discord.hpp"
#include "spindiscord/xy.hpp"

using namespace spindiscord;

namespace {

const XStateDensity kBellPhiPlus{0.5, 0.0, 0.0, 0.5, 0.5, 0.0};
const XStateDensity kMaximallyMixed{0.25, 0.25, 0.25, 0.25, 0.0, 0.0};

XStateDensity spin_flipped(const XStateDensity& rho) {
    // sigma_x on both qubits: uu <-> dd, ud <-> du; real coherences unchanged
    return {rho.p_dd, rho.p_du, rho.p_ud, rho.p_uu, rho.c_outer, rho.c_inner};
}

}  // namespace

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.25) ==
          doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(binary_entropy(1.1), DomainError);
    CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
}

TEST_CASE("von Neumann entropy anchors") {
    CHECK(von_neumann_entropy(kMaximallyMixed) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(von_neumann_entropy(kBellPhiPlus) == doctest::Approx(0.0).epsilon(1e-12));

    auto rho = build_pair_state(1, XYParams{1.0, 1.0});
    CHECK(von_neumann_entropy(rho) ==
          doctest::Approx(entropy_of_spectrum(pair_spectrum(rho))).epsilon(1e-10));
}

TEST_CASE("pair spectrum") {
    auto polarized = pair_spectrum(-1.0, 0.0, 0.0, 1.0);
    std::sort(polarized.begin(), polarized.end());
    CHECK(polarized[3] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(polarized[0]) < 1e-14);

    auto bell = pair_spectrum(0.0, 1.0, -1.0, 1.0);
    std::sort(bell.begin(), bell.end());
    CHECK(bell[3] == doctest::Approx(1.0).epsilon(1e-14));

    XStateDensity asym{0.5, 0.3, 0.1, 0.1, 0.0, 0.05};
    CHECK_THROWS_AS(pair_spectrum(asym), PreconditionError);
}

TEST_CASE("pair spectrum agrees with a direct 4x4 eigensolve") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 10000; ++trial) {
        auto rho = testutil::random_x_state(rng, /*symmetric=*/true);
        auto closed = pair_spectrum(rho);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho.matrix());
        std::sort(closed.begin(), closed.end());
        for (int i = 0; i < 4; ++i)
            CHECK(closed[i] == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-12));
    }
}

TEST_CASE("mutual information anchors") {
    CHECK(mutual_information(kBellPhiPlus) == doctest::Approx(2.0).epsilon(1e-12));
    XStateDensity product{0.21, 0.09, 0.49, 0.21, 0.0, 0.0};  // 0.3/0.7 x 0.7/0.3
    CHECK(mutual_information(product) == doctest::Approx(0.0).epsilon(1e-12));
    XStateDensity classical{0.5, 0.0, 0.0, 0.5, 0.0, 0.0};
    CHECK(mutual_information(classical) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditional entropy after measurement") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        Measurement m{u(rng) * std::numbers::pi, u(rng) * 2 * std::numbers::pi};
        CHECK(conditional_entropy_after(kBellPhiPlus, m) ==
              doctest::Approx(0.0).epsilon(1e-12));
    }

    XStateDensity product{0.21, 0.09, 0.49, 0.21, 0.0, 0.0};
    const double sa = binary_entropy(0.3);
    for (int k = 0; k < 20; ++k) {
        Measurement m{u(rng) * std::numbers::pi, u(rng) * 2 * std::numbers::pi};
        CHECK(conditional_entropy_after(product, m) ==
              doctest::Approx(sa).epsilon(1e-12));
    }

    auto rho = XStateDensity::from_pair_correlators(0.0, 0.5, 0.0, 0.0);
    CHECK(conditional_entropy_after(rho, {std::numbers::pi / 2, 0.0}) ==
          doctest::Approx(binary_entropy(0.75)).epsilon(1e-12));
}

TEST_CASE("azimuthal invariance without coherences") {
    XStateDensity rho{0.4, 0.2, 0.25, 0.15, 0.0, 0.0};
    const double ref = conditional_entropy_after(rho, {1.0, 0.0});
    for (double phi : {0.3, 1.7, 4.2})
        CHECK(conditional_entropy_after(rho, {1.0, phi}) ==
              doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("closed-form classical correlation") {
    auto bell = classical_correlation_closed_form(kBellPhiPlus);
    CHECK(bell.p1 == doctest::Approx(0.5));
    CHECK(bell.p2 == doctest::Approx(1.0));
    CHECK(bell.classical_corr == doctest::Approx(1.0).epsilon(1e-12));

    auto polarized = classical_correlation_closed_form(
        XStateDensity::from_pair_correlators(-1.0, 0.0, 0.0, 1.0));
    CHECK(polarized.classical_corr == doctest::Approx(0.0).epsilon(1e-12));

    auto xonly = classical_correlation_closed_form(
        XStateDensity::from_pair_correlators(0.0, 0.5, 0.0, 0.0));
    CHECK(xonly.classical_corr ==
          doctest::Approx(1.0 - binary_entropy(0.75)).epsilon(1e-12));

    auto invalid = XStateDensity::from_pair_correlators(0.0, 0.1, 0.5, 0.0);
    CHECK_THROWS_AS(classical_correlation_closed_form(invalid), PreconditionError);
}

TEST_CASE("optimizer matches known optima") {
    auto bell = classical_correlation_optimized(kBellPhiPlus);
    CHECK(bell.classical_corr == doctest::Approx(1.0).epsilon(1e-9));

    // classical state with p = {0.4, 0.1, 0.2, 0.3}: J = I and Q = 0
    XStateDensity classical{0.4, 0.1, 0.2, 0.3, 0.0, 0.0};
    auto opt = classical_correlation_optimized(classical);
    CHECK(opt.classical_corr ==
          doctest::Approx(mutual_information(classical)).epsilon(1e-9));

    auto rho = build_pair_state(1, XYParams{0.1, 0.9});
    const double closed = classical_correlation_closed_form(rho).classical_corr;
    const double optimized = classical_correlation_optimized(rho).classical_corr;
    CHECK(optimized >= closed - 1e-9);
    CHECK(std::abs(optimized - closed) < 1e-4);
}

TEST_CASE("quantum discord anchors") {
    CHECK(quantum_discord(kBellPhiPlus).discord == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(quantum_discord(kBellPhiPlus, DiscordMethod::closed_form).discord ==
          doctest::Approx(1.0).epsilon(1e-9));

    std::mt19937 rng(23);
    for (int k = 0; k < 50; ++k) {
        auto classical = testutil::random_classical_x_state(rng);
        CHECK(quantum_discord(classical).discord < 1e-8);
    }

    // Werner state at p = 1/2 carries discord
    XStateDensity werner{0.375, 0.125, 0.125, 0.375, 0.25, 0.0};
    CHECK(quantum_discord(werner).discord > 1e-3);
}

TEST_CASE("correlation bounds on random states") {
    std::mt19937 rng(31);
    for (int k = 0; k < 200; ++k) {
        auto rho = testutil::random_x_state(rng);
        auto report = quantum_discord(rho);
        const double sa = binary_entropy(0.5 * (1 + rho.mz_a()));
        const double sb = binary_entropy(0.5 * (1 + rho.mz_b()));
        CHECK(report.classical_corr >= -1e-9);
        CHECK(report.classical_corr <= std::min(sa, sb) + 1e-9);
        CHECK(report.discord >= 0.0);
        CHECK(report.discord <= report.mutual_info + 1e-9);
    }
}

TEST_CASE("discord is invariant under the global spin flip") {
    std::mt19937 rng(37);
    for (int k = 0; k < 50; ++k) {
        auto rho = testutil::random_x_state(rng);
        auto a = quantum_discord(rho);
        auto b = quantum_discord(spin_flipped(rho));
        CHECK(a.mutual_info == doctest::Approx(b.mutual_info).epsilon(1e-10));
        CHECK(a.classical_corr == doctest::Approx(b.classical_corr).epsilon(1e-10));
        CHECK(a.discord == doctest::Approx(b.discord).epsilon(1e-10));
    }
}

TEST_CASE("optimized J dominates the closed form across the XY range") {
    for (double gamma : {0.1, 0.5, 1.0}) {
        for (double lambda : {0.5, 1.0, 1.5}) {
            XYParams p{gamma, lambda};
            GTable table(p);
            const double mz = magnetization(p);
            for (int n : {1, 3, 6, 10}) {
                auto rho = build_pair_state(n, table, mz);
                const double closed =
                    classical_correlation_closed_form(rho).classical_corr;
                const double opt =
                    classical_correlation_optimized(rho).classical_corr;
                CHECK(opt >= closed - 1e-9);
                CHECK(std::abs(opt - closed) < 1e-4);
            }
        }
    }
}
