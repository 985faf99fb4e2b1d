#include <gtest/gtest.h>

#include <cmath>

#include "malpha/alpha_operators.h"
#include "malpha/errors.h"

using namespace malpha;

namespace {

ScalarField sample(const Grid& g, double (*f)(double, double, double)) {
  ScalarField out(g);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto p = g.point(i);
    out[i] = f(p[0], p[1], p[2]);
  }
  return out;
}

double max_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

VelocityField taylor_green(const Grid& g) {
  return VelocityField::from_physical(
      {sample(g, [](double x, double y, double) { return std::sin(x) * std::cos(y); }),
       sample(g, [](double x, double y, double) { return -std::cos(x) * std::sin(y); })});
}

double max_abs(const SpectralVector& v) {
  double m = 0.0;
  for (const auto& f : to_physical(v)) m = std::max(m, f.max_abs());
  return m;
}

}  // namespace

TEST(Advect, ScalarByHand) {
  Grid g(2, 32);
  const auto u = taylor_green(g);
  const auto q = to_spectral(sample(g, [](double x, double, double) { return std::sin(x); }));
  // u·∇q = sin x cos y · cos x.
  const auto want = sample(g, [](double x, double y, double) { return std::sin(x) * std::cos(y) * std::cos(x); });
  EXPECT_LT(max_diff(to_physical(advect(u.spectral(), q)), want), 1e-13);
}

TEST(Advect, GradTransposeByHand) {
  Grid g(2, 32);
  const auto u = taylor_green(g);
  // v = (1, 0): Σ v_i ∇u_i = ∇u_1 = (cos x cos y, −sin x sin y).
  ScalarField one(g);
  for (auto& x : one.values()) x = 1.0;
  const auto v = to_spectral(std::vector<ScalarField>{one, ScalarField(g)});
  const auto r = to_physical(grad_transpose(v, u.spectral()));
  EXPECT_LT(max_diff(r[0], sample(g, [](double x, double y, double) { return std::cos(x) * std::cos(y); })), 1e-13);
  EXPECT_LT(max_diff(r[1], sample(g, [](double x, double y, double) { return -std::sin(x) * std::sin(y); })), 1e-13);
}

TEST(Tendency, VanishesAtZeroDelta) {
  Grid g(2, 16);
  const auto u = random_divfree(g, 1, 2.0);
  const auto s = random_symmetric(g, 2, 3, 2.0);
  const Tendency t = transport_tendency(u.spectral(), s, PhysicalParams(1, 1, 1), 0.0, true);
  EXPECT_EQ(max_abs(t.momentum), 0.0);
  for (const auto& f : t.stress.upper()) EXPECT_EQ(to_physical(f).max_abs(), 0.0);
}

TEST(Residuals, TaylorGreenIsSteadyForEulerAlpha) {
  // For Taylor-Green both transport terms are gradients, so the projected
  // momentum tendency vanishes.
  Grid g(2, 32);
  const auto u = taylor_green(g);
  const PhysicalParams p(0.0, 1.0, 0.6);
  const auto pair = TestPair::constant(u, StressField(g));
  EXPECT_LT(max_abs(e1_residual(pair, 0.3, p, 1.0)), 1e-12);
}

TEST(Residuals, StressResidualOfFrozenVelocity) {
  Grid g(2, 32);
  const auto u = taylor_green(g);
  const PhysicalParams p(3.0, 2.0, 1.0);
  const auto pair = TestPair::constant(u, StressField(g));
  // θ ≡ 0: E₂ = 2μE(ζ) with E00 = cos x cos y = −E11, E01 = 0.
  const StressField e2 = e2_residual(pair, 0.0, p, 1.0);
  const auto c = sample(g, [](double x, double y, double) { return std::cos(x) * std::cos(y); });
  EXPECT_LT(max_diff(to_physical(e2(0, 0)), 3.0 * c), 1e-12);
  EXPECT_LT(max_diff(to_physical(e2(1, 1)), -3.0 * c), 1e-12);
  EXPECT_LT(to_physical(e2(0, 1)).max_abs(), 1e-12);
}

TEST(Residuals, RelaxationOfConstantStress) {
  Grid g(2, 16);
  const PhysicalParams p(1.0, 4.0, 1.0);
  const auto sigma = StressField::constant(g, {2, 0, 2});
  const auto pair = TestPair::constant(VelocityField::zero(g), sigma);
  const StressField e2 = e2_residual(pair, 0.0, p, 0.5);
  // −δσ/λ = −0.25 on the diagonal.
  EXPECT_NEAR(mean(e2(0, 0)), -0.25, 1e-14);
  EXPECT_NEAR(mean(e2(1, 1)), -0.25, 1e-14);
}

TEST(Identities, VanishOnRandomFields) {
  for (int dim : {2, 3}) {
    Grid g(dim, dim == 2 ? 32 : 16);
    for (int s = 0; s < 5; ++s) {
      const auto kappa = random_divfree(g, 100 + s, 2.5);
      const auto u = random_divfree(g, 200 + s, 2.5);
      const auto sigma = random_symmetric(g, 300 + s, g.dealias_cutoff(), 2.0);
      const double k1 = sobolev_norm(kappa.spectral(), SobolevIndex(1));
      EXPECT_LT(trilinear_identity_defect(kappa.spectral(), 0.7), 1e-11 * k1 * k1 * k1);
      const double scale = sobolev_norm(u.spectral(), SobolevIndex(1)) *
                           std::pow(stress_norm(sigma, SobolevIndex(1)), 2);
      EXPECT_LT(transport_skew_defect(u.spectral(), sigma), 1e-11 * scale);
      const double c = std::pow(stress_norm(sigma, SobolevIndex(0)), 2) *
                       sobolev_norm(u.spectral(), SobolevIndex(1));
      EXPECT_LT(commutator_orthogonality_defect(sigma, vorticity(u)), 1e-11 * c);
    }
  }
}

TEST(Identities, DefectIsNotTriviallyZero) {
  // A non-solenoidal advecting field breaks skew-symmetry, so the defect
  // routine must register it.
  Grid g(2, 32);
  const auto u = to_spectral(std::vector<ScalarField>{
      sample(g, [](double x, double, double) { return std::sin(x); }), ScalarField(g)});
  const auto tau = to_spectral(sample(g, [](double x, double, double) { return 1.0 + std::cos(x); }));
  EXPECT_GT(transport_skew_defect(u, tau), 1e-2);
}

TEST(Gamma, WeightForConstantPair) {
  Grid g(2, 32);
  const auto u = taylor_green(g);
  const double alpha = 0.5;
  const PhysicalParams p(1.0, 1.0, alpha);
  // Each TG mode has |k|² = 2 and ‖u‖ = √2 π.
  const double n0 = std::sqrt(2.0) * M_PI;
  const double h1 = std::sqrt(3.0) * n0;
  const double h3 = std::pow(3.0, 1.5) * n0;
  const double want = 4.0 * ((1 + 2 * alpha * alpha) * h1 + h1 + alpha * alpha * h3);
  EXPECT_NEAR(gamma_weight(u.spectral(), StressField(g), p, 1.0, CheckMode::kMaxwell), want, 1e-9);
  const auto theta = StressField::constant(g, {1, 0, 0});
  const double with_theta = want + 4.0 * 2.0 * (2 * M_PI);
  EXPECT_NEAR(gamma_weight(u.spectral(), theta, p, 1.0, CheckMode::kMaxwell), with_theta, 1e-9);
  EXPECT_NEAR(gamma_weight(u.spectral(), theta, p, 1.0, CheckMode::kEulerAlpha), want, 1e-9);
}

namespace {

VelocityField shear(const Grid& g) {
  return VelocityField::from_physical(
      {sample(g, [](double, double y, double) { return std::sin(y); }), ScalarField(g)});
}

}  // namespace

TEST(Advect, ShearNonlinearityIsGradient) {
  Grid g(2, 32);
  const double alpha = 0.8;
  const auto u = shear(g);
  const SpectralVector v = helmholtz_apply(u.spectral(), alpha);
  // u·∇v = 0 for the shear; Σ v_i ∇u_i = (1+α²) sin y (0, cos y).
  SpectralVector nl = advect(u.spectral(), v) + grad_transpose(v, u.spectral());
  const auto phys = to_physical(nl);
  const auto want = sample(g, [](double, double y, double) { return (1 + 0.64) * std::sin(y) * std::cos(y); });
  EXPECT_LT(phys[0].max_abs(), 1e-13);
  EXPECT_LT(max_diff(phys[1], want), 1e-13);
  EXPECT_LT(max_abs(leray_project(nl)), 1e-13);
}

TEST(Residuals, ShearOracles) {
  Grid g(2, 32);
  const PhysicalParams p(1.0, 1.0, 1.0);
  const auto pair = TestPair::constant(shear(g), StressField(g));
  EXPECT_LT(max_abs(e1_residual(pair, 0.0, p, 1.0)), 1e-10);
  const StressField e2 = e2_residual(pair, 0.0, p, 1.0);
  const auto cos_y = sample(g, [](double, double y, double) { return std::cos(y); });
  EXPECT_LT(max_diff(to_physical(e2(0, 1)), cos_y), 1e-12);
}

TEST(Gamma, ShearOracle) {
  Grid g(2, 32);
  const auto u = shear(g);
  const PhysicalParams p(1.0, 1.0, 1.0);
  // ‖ζ‖_s = 2^{s/2}·√2 π; Δ_α ζ = 2ζ.
  const double n0 = std::sqrt(2.0) * M_PI;
  const double want = 2 * std::sqrt(2.0) * n0 + std::sqrt(2.0) * n0 + std::pow(2.0, 1.5) * n0;
  EXPECT_NEAR(gamma_weight(u.spectral(), StressField(g), p, 1.0, CheckMode::kMaxwell), want, 1e-10);
}

TEST(Identities, SingleModeShear) {
  Grid g(2, 64);
  EXPECT_LE(trilinear_identity_defect(shear(g).spectral(), 1.0), 1e-12);
}
