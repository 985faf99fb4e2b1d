#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "malpha/errors.h"
#include "malpha/spectral.h"

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

}  // namespace

TEST(Grid, RejectsBadSizes) {
  EXPECT_THROW(Grid(2, 12), ConfigError);
  EXPECT_THROW(Grid(2, 4), ConfigError);
  EXPECT_THROW(Grid(4, 16), ConfigError);
  EXPECT_NO_THROW(Grid(3, 8));
}

TEST(Grid, HalfLayoutSizes) {
  Grid g(2, 16);
  EXPECT_EQ(g.real_size(), 256u);
  EXPECT_EQ(g.spectral_size(), 16u * 9u);
  EXPECT_EQ(g.dealias_cutoff(), 5);
  EXPECT_EQ(spectral_index(g, {0, -1, 0}), -1);
  EXPECT_GE(spectral_index(g, {-3, 2, 0}), 0);
}

TEST(Spectral, ConstantMapsToScaledZeroMode) {
  Grid g(2, 16);
  ScalarField c(g);
  for (auto& v : c.values()) v = 2.5;
  const SpectralField s = to_spectral(c);
  EXPECT_NEAR(s[0].real(), 2.5 * 256, 1e-10);
  EXPECT_NEAR(mean(s), 2.5, 1e-14);
}

TEST(Spectral, RoundTrip) {
  Grid g(3, 16);
  ScalarField f(g);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  for (auto& v : f.values()) v = nd(rng);
  EXPECT_LT(max_diff(to_physical(to_spectral(f)), f), 1e-13);
}

TEST(Spectral, DerivativeMatchesCalculus) {
  Grid g(2, 32);
  const auto f = sample(g, [](double x, double y, double) { return std::sin(3 * x) * std::cos(2 * y); });
  const auto fx = sample(g, [](double x, double y, double) { return 3 * std::cos(3 * x) * std::cos(2 * y); });
  const auto fy = sample(g, [](double x, double y, double) { return -2 * std::sin(3 * x) * std::sin(2 * y); });
  EXPECT_LT(max_diff(derivative(f, 0), fx), 1e-12);
  EXPECT_LT(max_diff(derivative(f, 1), fy), 1e-12);
}

TEST(Spectral, DerivativeDropsNyquist) {
  Grid g(2, 8);
  // cos(4x) alternates ±1 on the grid and has no resolvable derivative.
  const auto f = sample(g, [](double x, double, double) { return std::cos(4 * x); });
  EXPECT_LT(derivative(f, 0).max_abs(), 1e-14);
}

TEST(Spectral, SobolevNormOfSingleMode) {
  Grid g(2, 16);
  // ‖sin(x+2y)‖_s² = (1+5)^s · ∫ sin² = 6^s · 2π².
  const auto f = sample(g, [](double x, double y, double) { return std::sin(x + 2 * y); });
  const double l2 = 2 * M_PI * M_PI;
  for (double s : {0.0, 1.0, 2.0, 3.0}) {
    EXPECT_NEAR(sobolev_inner(f, f, SobolevIndex(s)), std::pow(6.0, s) * l2, 1e-9 * std::pow(6.0, s));
  }
  EXPECT_THROW(SobolevIndex(-1.0), ContractViolation);
}

TEST(Spectral, ParsevalMatchesQuadrature) {
  Grid g(2, 16);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd;
  ScalarField a(g), b(g);
  for (auto& v : a.values()) v = nd(rng);
  for (auto& v : b.values()) v = nd(rng);
  EXPECT_NEAR(sobolev_inner(a, b, SobolevIndex(0)), l2_inner(a, b), 1e-10);
}

TEST(Spectral, DealiasedProductOfLowModesIsExact) {
  Grid g(2, 32);
  const auto a = sample(g, [](double x, double y, double) { return std::cos(4 * x + y); });
  const auto b = sample(g, [](double x, double y, double) { return std::sin(3 * x - 2 * y); });
  const auto prod = to_physical(dealiased_product(to_spectral(a), to_spectral(b)));
  EXPECT_LT(max_diff(prod, a * b), 1e-12);
}

TEST(Spectral, DealiasRemovesHighModes) {
  Grid g(2, 32);
  const auto f = sample(g, [](double x, double, double) { return std::cos(10 * x) + std::cos(11 * x); });
  const auto kept = sample(g, [](double x, double, double) { return std::cos(10 * x); });
  EXPECT_LT(max_diff(dealias(f), kept), 1e-13);
}

TEST(Spectral, HelmholtzOnSingleMode) {
  Grid g(2, 16);
  const double alpha = 0.7;
  const auto f = sample(g, [](double x, double y, double) { return std::cos(2 * x - 3 * y); });
  const auto h = to_physical(helmholtz_apply(to_spectral(f), alpha));
  EXPECT_LT(max_diff(h, (1 + alpha * alpha * 13) * f), 1e-12);
  const auto back = to_physical(helmholtz_invert(to_spectral(h), alpha));
  EXPECT_LT(max_diff(back, f), 1e-13);
  EXPECT_THROW(helmholtz_invert(to_spectral(f), 0.0), ConfigError);
}

TEST(Spectral, LerayMatchesModeFormula) {
  Grid g(2, 16);
  // u = (cos(x+y), 0). Mode k=(1,1) with û ∝ (1,0); P û = (1,0) − k(k·(1,0))/2 = (1/2, −1/2).
  ScalarField ux = sample(g, [](double x, double y, double) { return std::cos(x + y); });
  ScalarField uy(g);
  const auto p = to_physical(leray_project(to_spectral(std::vector<ScalarField>{ux, uy})));
  EXPECT_LT(max_diff(p[0], 0.5 * ux), 1e-13);
  EXPECT_LT(max_diff(p[1], -0.5 * ux), 1e-13);
  EXPECT_LT(max_divergence(to_spectral(p)), 1e-12);
}

TEST(Spectral, LerayLeavesMeanAndGradientBehavior) {
  Grid g(3, 8);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> nd;
  ScalarField phi(g);
  for (auto& v : phi.values()) v = nd(rng);
  SpectralField phi_hat = dealias(to_spectral(phi));
  // A pure gradient is annihilated.
  const auto p = leray_project(gradient(phi_hat));
  for (const auto& c : p) {
    for (const auto& z : c.coeffs()) EXPECT_LT(std::abs(z), 1e-9);
  }
}

TEST(Spectral, EnforceHermitianMakesRealConsistent) {
  Grid g(2, 8);
  SpectralField s(g);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  for (auto& z : s.coeffs()) z = {nd(rng), nd(rng)};
  enforce_hermitian(s);
  // After symmetrization the round trip through real space is lossless.
  const SpectralField back = to_spectral(to_physical(s));
  double m = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) m = std::max(m, std::abs(back[i] - s[i]));
  EXPECT_LT(m, 1e-12);
}

TEST(Spectral, MixedDerivativeOracle) {
  Grid g(2, 32);
  const auto f = sample(g, [](double x, double y, double) { return std::sin(2 * y) * std::cos(x); });
  const auto want = sample(g, [](double x, double y, double) { return 2 * std::cos(2 * y) * std::cos(x); });
  EXPECT_LT(max_diff(derivative(f, 1), want), 1e-12);
}

TEST(Spectral, LerayRemovesGradientPart) {
  Grid g(2, 32);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> nd;
  std::vector<ScalarField> raw(2, ScalarField(g));
  for (auto& c : raw) {
    for (auto& v : c.values()) v = nd(rng);
  }
  // Divergence-free part by the per-mode formula, written out here.
  SpectralVector u = to_spectral(raw);
  const ModeTable& m = mode_table(g);
  SpectralVector udf = u;
  for (std::size_t i = 1; i < m.k.size(); ++i) {
    const Complex kd = double(m.k[i][0]) * u[0][i] + double(m.k[i][1]) * u[1][i];
    for (int a = 0; a < 2; ++a) udf[a][i] = u[a][i] - double(m.k[i][a]) * kd / m.k2[i];
  }
  ScalarField phi(g);
  for (auto& v : phi.values()) v = nd(rng);
  const SpectralVector sum = udf + gradient(to_spectral(phi));
  const SpectralVector p = leray_project(sum);
  double worst = 0.0, scale = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (std::size_t i = 0; i < m.k.size(); ++i) {
      if (m.nyquist[i]) continue;  // the gradient drops Nyquist content
      worst = std::max(worst, std::abs(p[a][i] - udf[a][i]));
      scale = std::max(scale, std::abs(udf[a][i]));
    }
  }
  EXPECT_LT(worst, 1e-12 * scale);
}

TEST(Spectral, HelmholtzRandomRoundTrip) {
  Grid g(2, 32);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> nd;
  ScalarField f(g);
  for (auto& v : f.values()) v = nd(rng);
  const SpectralField s = to_spectral(f);
  const SpectralField back = helmholtz_invert(helmholtz_apply(s, 0.3), 0.3);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    worst = std::max(worst, std::abs(back[i] - s[i]));
    scale = std::max(scale, std::abs(s[i]));
  }
  EXPECT_LT(worst, 1e-13 * scale);
}

TEST(Spectral, SineNorms) {
  Grid g(2, 16);
  const auto f = sample(g, [](double x, double, double) { return std::sin(x); });
  const double l2 = std::pow(2 * M_PI, 2) / 2;
  EXPECT_NEAR(sobolev_inner(f, f, SobolevIndex(0)), l2, 1e-11);
  EXPECT_NEAR(sobolev_inner(f, f, SobolevIndex(1)), 2 * l2, 1e-11);
}

TEST(Spectral, DealiasIdempotent) {
  Grid g(2, 32);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd;
  ScalarField f(g);
  for (auto& v : f.values()) v = nd(rng);
  const SpectralField once = dealias(to_spectral(f));
  EXPECT_EQ(dealias(once).coeffs(), once.coeffs());
}
