#include <gtest/gtest.h>

#include <cmath>

#include "malpha/dissipative_check.h"
#include "malpha/errors.h"

using namespace malpha;

namespace {

SimConfig small(double t_end) {
  SimConfig c;
  c.n = 16;
  c.dt = 1e-3;
  c.t_end = t_end;
  c.epsilon = 1e-3;
  c.initial_stress = "random";
  c.seed = 4;
  return c;
}

}  // namespace

TEST(ZeroTest, PassesOnDissipativeRun) {
  const SimConfig c = small(0.05);
  const Trajectory traj = run(c);
  const auto r = dissipative_estimate(traj, c.params());
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.margin.front(), 0.0);
  EXPECT_GE(r.min_margin, -1e-10 * r.scale);
  // With the zero pair the right side is E(0) throughout.
  for (double rhs : r.rhs) EXPECT_NEAR(rhs, traj.energy.front().energy, 1e-12 * r.scale);
}

TEST(ZeroTest, DetectsEnergyGrowth) {
  // Scale up later snapshots by hand: the check must fail.
  const SimConfig c = small(0.01);
  Trajectory traj = run(c);
  for (std::size_t i = 1; i < traj.snapshots.size(); ++i) {
    auto& s = traj.snapshots[i];
    s.u = VelocityField::project(1.01 * s.u.spectral());
  }
  const auto r = dissipative_estimate(traj, c.params());
  EXPECT_FALSE(r.pass);
  EXPECT_LT(r.min_margin, 0.0);
}

TEST(Margin, SolutionAsOwnTestPairHasZeroLeftSide) {
  const SimConfig c = small(0.0);
  const Trajectory traj = run(c);
  const auto& s = traj.snapshots.front();
  const auto pair = TestPair::constant(s.u, s.sigma);
  const auto r = inequality_margin(traj, pair, c.params(), 1.0, CheckMode::kMaxwell);
  ASSERT_EQ(r.lhs.size(), 1u);
  EXPECT_NEAR(r.lhs[0], 0.0, 1e-20);
  EXPECT_NEAR(r.rhs[0], 0.0, 1e-20);
}

TEST(Margin, Contracts) {
  const SimConfig c = small(0.0);
  const Trajectory traj = run(c);
  EXPECT_THROW(inequality_margin(traj, TestPair::zero(Grid(2, 32)), c.params(), 1.0,
                                 CheckMode::kMaxwell),
               ContractViolation);
  EXPECT_THROW(inequality_margin(traj, TestPair::zero(c.grid()), c.params(), 0.0,
                                 CheckMode::kMaxwell),
               ContractViolation);
  EXPECT_EQ(default_mode(PhysicalParams(0, 1, 1)), CheckMode::kEulerAlpha);
  EXPECT_EQ(default_mode(PhysicalParams(1, 1, 1)), CheckMode::kMaxwell);
}

TEST(Calibration, ConstantsBoundedBelowByConstantPair) {
  const Grid g(2, 16);
  const auto cal = calibrate_gamma(g, 60, 1);
  // u = v = 1: ‖uv‖ = 2π, ‖u‖_s = 2π, so both ratios are at least 1/(2π).
  EXPECT_GE(cal.c_product_l2, 1.0 / (2 * M_PI) * (1 - 1e-12));
  EXPECT_GE(cal.c_product_h1, 1.0 / (2 * M_PI) * (1 - 1e-12));
  const double c1 = cal.c_product_l2;
  const double c2 = cal.c_product_h1;
  const double want = 2.0 * std::max({8 * c2, 24 * c1, 8 * (c2 + 2 * c1) / 2});
  EXPECT_NEAR(cal.gamma, want, 1e-12 * want);
  const auto again = calibrate_gamma(g, 60, 1);
  EXPECT_EQ(again.gamma, cal.gamma);
  EXPECT_THROW(calibrate_gamma(g, 10, 1), ConfigError);
}

TEST(Coincidence, MarginShrinksWithSmallerStep) {
  SimConfig c = small(0.1);
  c.dt = 0.01;
  c.amplitude = 0.1;
  c.stress_amplitude = 0.1;
  c.epsilon = 0.0;
  CoincidenceOptions o;
  o.gamma = 1.0;
  o.degree = 6;
  const auto coarse = coincidence_check(c, o);
  c.dt = 0.005;
  const auto fine = coincidence_check(c, o);
  EXPECT_TRUE(coarse.report.pass);
  EXPECT_TRUE(fine.report.pass);
  EXPECT_DOUBLE_EQ(fine.reference_dt, 0.005 / 8);
  // The left side is the squared distance between two second-order runs.
  EXPECT_LE(std::abs(fine.report.min_margin), std::abs(coarse.report.min_margin) / 4);
}

TEST(Sweep, RecordsFailuresAndContinues) {
  SimConfig c = small(0.02);
  c.dt = 0.01;
  c.amplitude = 10.0;
  c.cfl_max = 0.5;
  // dt·max|u|·N = 1.6 exceeds the bound.
  const auto entries = alpha_sweep(c, {1.0, 0.5}, 2);
  ASSERT_EQ(entries.size(), 2u);
  for (const auto& e : entries) {
    EXPECT_FALSE(e.completed);
    EXPECT_FALSE(e.error.empty());
  }
  EXPECT_THROW(alpha_sweep(c, {0.5, 1.0}), ConfigError);
}

TEST(Sweep, EnergyBoundedAcrossAlpha) {
  SimConfig c = small(0.02);
  const auto entries = alpha_sweep(c, {1.0, 0.5, 0.25}, 3);
  for (const auto& e : entries) {
    EXPECT_TRUE(e.completed) << e.error;
    EXPECT_TRUE(e.bound_ok);
    EXPECT_LE(e.sup_energy, e.e0 * (1 + 1e-8));
    for (double n : e.l2_norms) EXPECT_LE(n, e.l2_cap * (1 + 1e-8));
  }
}

TEST(Calibration, StableAcrossSeeds) {
  const Grid g(2, 32);
  const double a = calibrate_gamma(g, 200, 1).gamma;
  for (std::uint64_t seed : {2, 3, 4}) {
    const double b = calibrate_gamma(g, 200, seed).gamma;
    EXPECT_LT(std::abs(b - a), 0.2 * a) << seed;
  }
}
