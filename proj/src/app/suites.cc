#include "app/suites.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "malpha/alpha_operators.h"
#include "malpha/gronwall.h"

namespace malpha::app {

IdentityResult identity_suite(int dim, int n, double alpha, int samples, std::uint64_t seed) {
  const Grid grid(dim, n);
  IdentityResult r;
  r.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t base = seed + 3 * static_cast<std::uint64_t>(s);
    const VelocityField kappa = random_divfree(grid, base, 3.0);
    const VelocityField u = random_divfree(grid, base + 1, 2.5);
    const StressField sigma = random_symmetric(grid, base + 2, grid.dealias_cutoff(), 3.0);
    const double k1 = sobolev_norm(kappa.spectral(), SobolevIndex(1));
    const double u1 = sobolev_norm(u.spectral(), SobolevIndex(1));
    const double s0 = stress_norm(sigma, SobolevIndex(0));
    const double s1 = stress_norm(sigma, SobolevIndex(1));
    r.trilinear = std::max(r.trilinear,
                           trilinear_identity_defect(kappa.spectral(), alpha) / (k1 * k1 * k1));
    r.transport = std::max(r.transport,
                           transport_skew_defect(u.spectral(), sigma) / (u1 * s1 * s1));
    r.commutator = std::max(r.commutator,
                            commutator_orthogonality_defect(sigma, vorticity(u)) / (s0 * s0 * u1));
  }
  r.pass = r.trilinear <= r.tolerance && r.transport <= r.tolerance &&
           r.commutator <= r.tolerance;
  return r;
}

namespace {

std::vector<double> uniform_times(double horizon, int samples) {
  std::vector<double> t(samples);
  for (int j = 0; j < samples; ++j) t[j] = horizon * j / (samples - 1);
  return t;
}

double max_relative(const std::vector<double>& got, const std::vector<double>& want) {
  double worst = 0.0;
  for (std::size_t j = 0; j < got.size(); ++j) {
    worst = std::max(worst, std::abs(got[j] - want[j]) / std::max(std::abs(want[j]), 1e-300));
  }
  return worst;
}

GronwallCase closed_form(const std::string& name, double f0, double l, double m) {
  GronwallInput in;
  in.times = uniform_times(1.0, 10000);
  const std::size_t n = in.times.size();
  in.f.assign(n, 0.0);
  in.f[0] = f0;
  in.chi.assign(n, 0.0);
  in.L.assign(n, l);
  in.M.assign(n, m);
  std::vector<double> want(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = in.times[j];
    want[j] = l == 0.0 ? f0 + m * t : std::exp(l * t) * (f0 + m / l) - m / l;
  }
  GronwallCase c{name, max_relative(gronwall_bound(in), want), 1e-6, false};
  c.pass = c.error <= c.tolerance;
  return c;
}

}  // namespace

std::vector<GronwallCase> gronwall_selftest(std::uint64_t seed) {
  std::vector<GronwallCase> cases;
  cases.push_back(closed_form("L=0,M=0", 1.5, 0.0, 0.0));
  cases.push_back(closed_form("L=1,M=0", 1.5, 1.0, 0.0));
  cases.push_back(closed_form("L=1,M=1", 1.5, 1.0, 1.0));
  cases.push_back(closed_form("L=0.5,M=-0.2", 2.0, 0.5, -0.2));

  // Random nonnegative step functions on 20 pieces, switching halfway between
  // samples so that the trapezoid rule never straddles a jump unevenly.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> level(0.0, 2.0);
  const int pieces = 20;
  std::vector<double> lv(pieces), mv(pieces);
  for (int p = 0; p < pieces; ++p) {
    lv[p] = level(rng);
    mv[p] = level(rng);
  }
  const int samples = 10000;
  const double horizon = 1.0;
  const double h = horizon / (samples - 1);
  // Sample j carries piece(j); the jump between samples j and j+1 sits at
  // their midpoint.
  auto piece = [&](long j) {
    return std::min(pieces - 1, static_cast<int>(static_cast<double>(j) * pieces / samples));
  };
  GronwallInput in;
  in.times = uniform_times(horizon, samples);
  in.f.assign(samples, 0.0);
  in.f[0] = 1.0;
  in.chi.assign(samples, 0.0);
  in.L.resize(samples);
  in.M.resize(samples);
  for (int j = 0; j < samples; ++j) {
    in.L[j] = lv[piece(j)];
    in.M[j] = mv[piece(j)];
  }
  const std::vector<double> got = gronwall_bound(in);

  // g' = L g + M by RK4 with 8 substeps per sample interval; L and M are
  // constant on each substep.
  std::vector<double> want(samples);
  double g = 1.0;
  want[0] = g;
  const int sub = 8;
  const double k = h / sub;
  for (int j = 0; j + 1 < samples; ++j) {
    for (int s = 0; s < sub; ++s) {
      const int p = piece(s < sub / 2 ? j : j + 1);
      auto rhs = [&](double gg) { return lv[p] * gg + mv[p]; };
      const double k1 = rhs(g);
      const double k2 = rhs(g + 0.5 * k * k1);
      const double k3 = rhs(g + 0.5 * k * k2);
      const double k4 = rhs(g + k * k3);
      g += k / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    want[j + 1] = g;
  }
  GronwallCase c{"random-steps", max_relative(got, want), 1e-5, false};
  c.pass = c.error <= c.tolerance;
  cases.push_back(c);
  return cases;
}

OdeDemoResult ode_demo(const std::string& name, double dt, int curves, std::uint64_t seed) {
  OdeDemoResult r;
  r.name = name;
  const ode::OdeProblem problem = ode::demo_problem(name);
  problem.validate_one_sided(1000, seed);

  if (name == "sgn") {
    const ode::MollifiedFamily family = ode::sgn_family();
    r.pass = true;
    r.apriori_holds = true;
    r.min_margin = 0.0;
    for (double eps : family.epsilons) {
      const double step = std::min(dt, eps / 10.0);
      const ode::Path path = ode::integrate(family.member(eps), problem.initial,
                                            problem.horizon, step);
      double sup = 0.0;
      for (std::size_t j = 0; j < path.t.size(); ++j) {
        sup = std::max(sup, std::abs(path.x[j][0] - std::max(0.0, 1.0 - path.t[j])));
      }
      const double allowance = 5.0 * eps * (1.0 + std::abs(std::log(eps)));
      r.epsilons.push_back(eps);
      r.sup_errors.push_back(sup);
      r.allowances.push_back(allowance);
      r.pass = r.pass && sup <= allowance;
      const ode::AprioriReport ap = ode::apriori_bound(problem, path);
      r.apriori_holds = r.apriori_holds && ap.holds;
      r.path = path;
      r.apriori = ap;
    }
    r.pass = r.pass && r.apriori_holds;
    return r;
  }

  r.path = ode::integrate(problem.rhs, problem.initial, problem.horizon, dt);
  r.apriori = ode::apriori_bound(problem, r.path);
  r.apriori_holds = r.apriori.holds;
  r.min_margin = std::numeric_limits<double>::infinity();
  for (int c = 0; c < curves; ++c) {
    const ode::TestCurve v =
        ode::random_polynomial_curve(problem.dimension, 1 + c % 3, seed + c, 0.5);
    const ode::AbstractReport rep = ode::abstract_inequality_margin(r.path, v, problem);
    r.min_margin = std::min(r.min_margin, rep.min_margin);
  }
  r.pass = r.apriori_holds && r.min_margin >= -1e-8;
  return r;
}

}  // namespace malpha::app
