#include <gtest/gtest.h>

#include <cmath>

#include "malpha/config.h"
#include "malpha/errors.h"
#include "malpha/solver.h"

using namespace malpha;

namespace {

SimConfig small(double t_end) {
  SimConfig c;
  c.n = 32;
  c.dt = 1e-3;
  c.t_end = t_end;
  return c;
}

}  // namespace

TEST(Config, ValidateNamesKey) {
  SimConfig c = small(0.01);
  c.delta = 1.5;
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("delta"), std::string::npos);
  }
  c = small(0.0105);
  EXPECT_THROW(c.validate(), ConfigError);
  c = small(0.01);
  EXPECT_EQ(c.step_count(), 10);
}

TEST(Config, ParseRequiresKeysAndRejectsUnknown) {
  const std::string ok =
      R"({"grid":{"n":32,"dim":2},"alpha":1,"eta":1,"lambda":1,"dt":0.001,"t_end":0.01})";
  const SimConfig c = parse_config_text(ok);
  EXPECT_EQ(c.n, 32);
  EXPECT_THROW(parse_config_text(R"({"grid":{"n":32},"alpha":1,"eta":1,"lambda":1,"dt":0.001})"),
               ConfigError);
  EXPECT_THROW(parse_config_text(
                   R"({"grid":{"n":32},"alpha":1,"eta":1,"lambda":1,"dt":0.001,"t_end":0.01,"typo":1})"),
               ConfigError);
  EXPECT_THROW(parse_config_text(
                   R"({"grid":{"n":"32"},"alpha":1,"eta":1,"lambda":1,"dt":0.001,"t_end":0.01})"),
               ConfigError);
  EXPECT_THROW(parse_config_text("{not json"), ConfigError);
  EXPECT_EQ(parse_config_text(config_to_json(c)), c);
}

TEST(Solver, LinearDecayMatchesClosedForm) {
  // With δ = 0 only the regularization acts: every velocity mode decays with
  // rate ε(1+|k|²)³/(1+α²|k|²), every stress mode with ε(1+|k|²)².
  SimConfig c = small(0.05);
  c.delta = 0.0;
  c.epsilon = 0.1;
  c.alpha = 0.8;
  c.scale_initial_data = false;
  c.initial_stress = "random";
  c.seed = 5;
  const Trajectory traj = run(c);
  const auto& first = traj.snapshots.front();
  const auto& last = traj.snapshots.back();
  ASSERT_NEAR(last.t, 0.05, 1e-15);
  const ModeTable& m = mode_table(c.grid());
  double worst = 0.0;
  for (std::size_t i = 0; i < m.k.size(); ++i) {
    const double k2 = m.k2[i];
    const double rv = c.epsilon * std::pow(1 + k2, 3) / (1 + c.alpha * c.alpha * k2);
    const double rs = c.epsilon * std::pow(1 + k2, 2);
    for (int d = 0; d < 2; ++d) {
      const auto want = first.u[d][i] * std::exp(-rv * last.t);
      worst = std::max(worst, std::abs(last.u[d][i] - want) / (1 + std::abs(first.u[d][i])));
    }
    for (std::size_t e = 0; e < last.sigma.upper().size(); ++e) {
      const auto want = first.sigma.upper()[e][i] * std::exp(-rs * last.t);
      worst = std::max(worst, std::abs(last.sigma.upper()[e][i] - want) /
                                  (1 + std::abs(first.sigma.upper()[e][i])));
    }
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Solver, TaylorGreenEnergyDecayWithoutTransport) {
  SimConfig c = small(0.1);
  c.delta = 0.0;
  c.epsilon = 0.05;
  c.alpha = 0.5;
  c.scale_initial_data = false;
  const Trajectory traj = run(c);
  const double rate = c.epsilon * 27.0 / (1 + 2 * c.alpha * c.alpha);
  const double e0 = traj.energy.front().energy;
  for (const auto& r : traj.energy) {
    EXPECT_NEAR(r.energy, e0 * std::exp(-2 * rate * r.t), 1e-11 * e0);
  }
}

TEST(Solver, EnergyNonIncreasingWithTransport) {
  SimConfig c = small(0.1);
  c.epsilon = 1e-3;
  c.initial_stress = "random";
  c.seed = 2;
  const Trajectory traj = run(c);
  ASSERT_EQ(traj.energy.size(), 101u);
  for (std::size_t i = 1; i < traj.energy.size(); ++i) {
    EXPECT_LE(traj.energy[i].energy, traj.energy[i - 1].energy * (1 + 1e-10));
  }
  EXPECT_LT(traj.max_divergence_drift, 1e-8);
}

TEST(Solver, SnapshotStrideAndTimes) {
  SimConfig c = small(0.01);
  c.snapshot_stride = 3;
  const Trajectory traj = run(c);
  std::vector<double> times;
  for (const auto& s : traj.snapshots) times.push_back(s.t);
  const std::vector<double> want{0.0, 0.003, 0.006, 0.009, 0.01};
  ASSERT_EQ(times.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(times[i], want[i], 1e-15);
}

TEST(Solver, CflViolationIsAnError) {
  SimConfig c = small(0.01);
  c.dt = 0.01;
  c.t_end = 0.01;
  c.amplitude = 10.0;
  EXPECT_THROW(run(c), CflViolation);
}

TEST(Solver, BlowupCarriesLastGoodState) {
  SimConfig c = small(0.01);
  c.cfl_max = 1e300;
  c.amplitude = 1e200;
  try {
    run(c);
    FAIL() << "expected blowup";
  } catch (const IntegrationBlowup& e) {
    EXPECT_EQ(e.last_good().step_count, 0);
    EXPECT_GT(e.time(), 0.0);
  }
}

TEST(Solver, EulerAlphaRejectsStress) {
  SimConfig c = small(0.01);
  c.eta = 0.0;
  c.initial_stress = "random";
  EXPECT_THROW(run(c), ConfigError);
  c.initial_stress = "zero";
  EXPECT_NO_THROW(run(c));
}

TEST(Solver, DeltaScalesInitialData) {
  SimConfig c = small(0.0);
  c.delta = 0.5;
  const double half = run(c).energy.front().energy;
  c.delta = 1.0;
  const double full = run(c).energy.front().energy;
  EXPECT_NEAR(half, 0.25 * full, 1e-12 * full);
}

TEST(Solver, UnknownPresetIsConfigError) {
  SimConfig c = small(0.01);
  c.initial_condition = "no-such-preset";
  EXPECT_THROW(run(c), ConfigError);
}

TEST(Solver, SteadyShearForEulerAlpha) {
  SimConfig c = small(0.05);
  c.eta = 0.0;
  c.epsilon = 0.0;
  c.initial_condition = "shear";
  const Trajectory traj = run(c);
  const auto& a = traj.snapshots.front().u;
  const auto& b = traj.snapshots.back().u;
  double worst = 0.0, scale = 0.0;
  for (int d = 0; d < 2; ++d) {
    for (std::size_t i = 0; i < a[d].size(); ++i) {
      worst = std::max(worst, std::abs(a[d][i] - b[d][i]));
      scale = std::max(scale, std::abs(a[d][i]));
    }
  }
  EXPECT_LT(worst, 1e-12 * scale);
}
