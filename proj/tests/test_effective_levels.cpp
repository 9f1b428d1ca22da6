#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "excitonsim/effective_levels.hpp"
#include "excitonsim/errors.hpp"
#include "oracles.hpp"

using namespace excitonsim;

namespace {

std::vector<double> sweep(double lo, double hi, int points) {
    std::vector<double> out;
    for (int i = 0; i < points; ++i) out.push_back(lo + (hi - lo) * i / (points - 1));
    return out;
}

// Number of groups left after merging values closer than tol.
std::size_t distinct(const std::array<double, 4>& v, double tol) {
    std::size_t count = 1;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] - v[i - 1] > tol) ++count;
    return count;
}

} // namespace

TEST(BuildHeff, UncoupledIsDiagonal) {
    const EffectiveParams p{1.5, 0.25, -0.75, 0.0, 0.0, 0.0};
    const Eigen::Matrix4d h = build_heff(p);
    Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
    expected.diagonal() << 0.0, 1.5, 0.25, 1.5 - 0.75;
    EXPECT_EQ(h, expected);
}

TEST(BuildHeff, TridiagonalLayout) {
    const EffectiveParams p{0.3, 0.2, 0.1, 1.0, 2.0, 3.0};
    Eigen::Matrix4d expected;
    expected << 0.0, 1.0, 0.0, 0.0,
                1.0, 0.3, 2.0, 0.0,
                0.0, 2.0, 0.2, 3.0,
                0.0, 0.0, 3.0, 0.4;
    EXPECT_TRUE(build_heff(p).isApprox(expected, 1e-15));
}

TEST(BuildHeff, ResonantTemplateHasZeroDiagonal) {
    EffectiveParams p = four_level_resonant_template();
    const CouplingRatios r = four_level_resonant_ratios();
    EXPECT_DOUBLE_EQ(r.omega1_per_omega2, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(r.omega3_per_omega2, 1.0 / 9.0);
    p.omega2 = 9.0;
    p.omega1 = 3.0;
    p.omega3 = 1.0;
    const Eigen::Matrix4d h = build_heff(p);
    EXPECT_EQ(h.diagonal().cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(h, h.transpose());
}

TEST(BuildHeff, DetunedTemplateDecouplesTopLevel) {
    EffectiveParams p = three_level_detuned_template();
    const CouplingRatios r = three_level_detuned_ratios();
    EXPECT_DOUBLE_EQ(p.delta2, 0.5);
    EXPECT_DOUBLE_EQ(r.omega3_per_omega2, 0.0);
    p.omega2 = 4.0;
    p.omega1 = 4.0 * r.omega1_per_omega2;
    p.omega3 = 0.0;
    const Eigen::Matrix4d h = build_heff(p);
    EXPECT_EQ(h.col(3).head(3).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(h.row(3).head(3).cwiseAbs().maxCoeff(), 0.0);
    // The decoupled level keeps its bare energy.
    const auto ev = heff_eigenvalues(p);
    EXPECT_NE(std::find_if(ev.begin(), ev.end(),
                           [&](double x) { return std::abs(x - h(3, 3)) < 1e-12; }),
              ev.end());
}

TEST(EigenTracks, EmptyGridIsRejected) {
    EXPECT_THROW(eigen_tracks(four_level_resonant_template(), four_level_resonant_ratios(), {}),
                 InputError);
}

TEST(EigenTracks, ZeroDiagonalFamilyMatchesQuartic) {
    const auto grid = sweep(0.0, 10.0, 401);
    const EigenTracks t =
        eigen_tracks(four_level_resonant_template(), four_level_resonant_ratios(), grid);
    ASSERT_EQ(t.values.size(), grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto roots = oracle::zero_diagonal_quartic_roots(grid[i] / 3, grid[i], grid[i] / 9);
        for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(t.values[i][j], roots[j], 1e-10);
    }
}

TEST(EigenTracks, QuarticOnRandomZeroDiagonalMatrices) {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 200; ++trial) {
        const EffectiveParams p{0.0, 0.0, 0.0, u(gen), u(gen), u(gen)};
        const auto ev = heff_eigenvalues(p);
        const auto roots = oracle::zero_diagonal_quartic_roots(p.omega1, p.omega2, p.omega3);
        for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(ev[j], roots[j], 1e-10);
        for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(ev[j], -ev[3 - j], 1e-10);
    }
}

TEST(EigenTracks, SumEqualsTrace) {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const EffectiveParams base{u(gen), u(gen), u(gen), 0.0, 0.0, 0.0};
        const CouplingRatios ratios{u(gen), u(gen)};
        const auto grid = sweep(0.0, 10.0, 41);
        const EigenTracks t = eigen_tracks(base, ratios, grid);
        const double trace = 2 * base.omega12_minus_c + base.delta2 + base.delta23;
        for (const auto& v : t.values) {
            EXPECT_NEAR(v[0] + v[1] + v[2] + v[3], trace, 1e-10);
            EXPECT_TRUE(std::is_sorted(v.begin(), v.end()));
        }
    }
}

TEST(EigenTracks, VanishAtZeroCoupling) {
    const std::vector<double> grid{0.0};
    const EigenTracks t =
        eigen_tracks(four_level_resonant_template(), four_level_resonant_ratios(), grid);
    for (double v : t.values[0]) EXPECT_EQ(v, 0.0);
}

TEST(EigenTracks, TracksAreContinuous) {
    // Eigenvalues of a symmetric matrix are 1-Lipschitz in the spectral norm,
    // and d||H||/dOmega2 <= 1 + r1 + r3 for a tridiagonal coupling pattern.
    for (const auto& [base, ratios] :
         {std::pair{four_level_resonant_template(), four_level_resonant_ratios()},
          std::pair{three_level_detuned_template(), three_level_detuned_ratios()}}) {
        const auto grid = sweep(0.0, 10.0, 1001);
        const EigenTracks t = eigen_tracks(base, ratios, grid);
        const double bound = (1 + ratios.omega1_per_omega2 + ratios.omega3_per_omega2) *
                             (grid[1] - grid[0]);
        for (std::size_t i = 1; i < grid.size(); ++i)
            for (std::size_t j = 0; j < 4; ++j)
                EXPECT_LE(std::abs(t.values[i][j] - t.values[i - 1][j]), bound * (1 + 1e-9));
    }
}

TEST(EigenTracks, MiddleDoubletUnresolvedThenSplitsLinearly) {
    const double gamma = 1.0;
    const auto grid = sweep(1.0, 10.0, 91);
    const EigenTracks t =
        eigen_tracks(four_level_resonant_template(), four_level_resonant_ratios(), grid);
    std::vector<double> x, split;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        EXPECT_EQ(distinct(t.values[i], gamma), 3u) << "omega2=" << grid[i];
        x.push_back(grid[i]);
        split.push_back(t.values[i][2] - t.values[i][1]);
    }
    EXPECT_GT(oracle::r_squared_linear(x, split), 0.999);
    EXPECT_GT(oracle::fitted_slope(x, split), 0.0);
}
