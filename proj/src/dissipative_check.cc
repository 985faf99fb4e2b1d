#include "malpha/dissipative_check.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "malpha/gronwall.h"

namespace malpha {

CheckMode default_mode(const PhysicalParams& params) {
  return params.euler_alpha() ? CheckMode::kEulerAlpha : CheckMode::kMaxwell;
}

DissipativeReport inequality_margin(const Trajectory& trajectory, const TestPair& test,
                                    const PhysicalParams& params, double gamma_const,
                                    CheckMode mode, const MarginOptions& options) {
  if (trajectory.snapshots.empty()) throw ContractViolation("inequality_margin: empty trajectory");
  const Grid& grid = trajectory.snapshots.front().u.grid();
  if (!(test.grid() == grid)) {
    throw ContractViolation("inequality_margin: test pair and trajectory use different grids");
  }
  if (mode == CheckMode::kMaxwell && !(params.mu() > 0.0)) {
    throw ContractViolation("inequality_margin: Maxwell mode needs mu > 0");
  }
  if (!(gamma_const > 0.0)) throw ContractViolation("inequality_margin: gamma must be positive");

  const bool maxwell = mode == CheckMode::kMaxwell;
  const double w = maxwell ? 2.0 * params.mu() : 1.0;
  const double alpha = params.alpha();
  const StressField zero_stress(grid);

  const std::size_t n = trajectory.snapshots.size();
  GronwallInput g;
  g.times.resize(n);
  g.f.resize(n);
  g.chi.assign(n, 0.0);
  g.L.resize(n);
  g.M.resize(n);

  for (std::size_t j = 0; j < n; ++j) {
    const Snapshot& snap = trajectory.snapshots[j];
    const double t = snap.t;
    const SpectralVector zeta = test.zeta(t);
    const SpectralVector wv = snap.u.spectral() - zeta;
    g.times[j] = t;
    if (maxwell) {
      const StressField theta = test.theta(t);
      const StressField varsigma = snap.sigma - theta;
      const Residuals r = residuals(zeta, test.zeta_dot(t), theta, test.theta_dot(t), params,
                                    options.delta);
      g.f[j] = w * v_norm_squared(wv, alpha) + stress_inner(varsigma, varsigma, SobolevIndex(0));
      g.M[j] = 2.0 * w * sobolev_inner(r.e1, wv, SobolevIndex(0)) +
               2.0 * stress_inner(r.e2, varsigma, SobolevIndex(0));
      g.L[j] = gamma_weight(zeta, theta, params, gamma_const, mode);
    } else {
      const Residuals r = residuals(zeta, test.zeta_dot(t), zero_stress, zero_stress, params,
                                    options.delta);
      g.f[j] = v_norm_squared(wv, alpha);
      g.M[j] = 2.0 * sobolev_inner(r.e1, wv, SobolevIndex(0));
      g.L[j] = gamma_weight(zeta, zero_stress, params, gamma_const, mode);
    }
  }

  // Initial term from the data (a, σ₀) rather than the first snapshot.
  const SpectralVector& a =
      options.initial_velocity ? *options.initial_velocity : trajectory.snapshots.front().u.spectral();
  const StressField& sigma0 =
      options.initial_stress ? *options.initial_stress : trajectory.snapshots.front().sigma;
  const double t0 = trajectory.snapshots.front().t;
  const SpectralVector a_minus = a - test.zeta(t0);
  double f0 = w * v_norm_squared(a_minus, alpha);
  double e0 = w * v_norm_squared(a, alpha);
  if (maxwell) {
    const StressField s_minus = sigma0 - test.theta(t0);
    f0 += stress_inner(s_minus, s_minus, SobolevIndex(0));
    e0 += stress_inner(sigma0, sigma0, SobolevIndex(0));
  }

  DissipativeReport report;
  report.times = g.times;
  report.lhs = g.f;
  GronwallInput bound_input = g;
  bound_input.f[0] = f0;
  report.rhs = gronwall_bound(bound_input);
  report.gamma_integral = cumulative_trapezoid(g.times, g.L);
  report.margin.resize(n);
  report.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    report.margin[j] = report.rhs[j] - report.lhs[j];
    report.min_margin = std::min(report.min_margin, report.margin[j]);
  }
  report.gamma_used = gamma_const;
  report.tolerance = options.tolerance;
  report.scale = std::max(e0, 1e-12);
  report.pass = std::isfinite(report.min_margin) &&
                report.min_margin >= -options.tolerance * report.scale;
  return report;
}

DissipativeReport dissipative_estimate(const Trajectory& trajectory,
                                       const PhysicalParams& params,
                                       const MarginOptions& options) {
  if (trajectory.snapshots.empty()) throw ContractViolation("dissipative_estimate: empty trajectory");
  const TestPair zero = TestPair::zero(trajectory.snapshots.front().u.grid());
  return inequality_margin(trajectory, zero, params, 1.0, default_mode(params), options);
}

// ---- γ calibration ----

namespace {

SpectralField random_scalar(const Grid& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 3);
  const double decay = 1.5 + 0.5 * pick(rng);
  const ModeTable& modes = mode_table(grid);
  const double n = static_cast<double>(grid.real_size());
  const int band = grid.n() / 4 - 1;
  SpectralField f(grid);
  for (std::size_t i = 0; i < grid.spectral_size(); ++i) {
    const Complex g(normal(rng), normal(rng));
    bool inside = true;
    for (int a = 0; a < grid.dim(); ++a) inside = inside && std::abs(modes.k[i][a]) <= band;
    if (inside) f[i] = n * std::pow(1.0 + modes.k2[i], -0.5 * decay) * g;
  }
  // Mean drawn separately so that some pairs are mean-dominated.
  f[0] = Complex(n * 3.0 * normal(rng), 0.0);
  enforce_hermitian(f);
  return f;
}

double product_norm(const SpectralField& u, const SpectralField& v) {
  const ScalarField uv = to_physical(u) * to_physical(v);
  return std::sqrt(l2_inner(uv, uv));
}

}  // namespace

GammaCalibration calibrate_gamma(const Grid& grid, int samples, std::uint64_t seed,
                                 double safety) {
  if (samples < 50) throw ConfigError("calibrate_gamma: samples must be >= 50");
  if (!(safety > 0.0)) throw ConfigError("calibrate_gamma: safety factor must be positive");
  std::mt19937_64 rng(seed);
  GammaCalibration out;
  out.safety = safety;
  const double n = static_cast<double>(grid.real_size());
  auto consider = [&](const SpectralField& u, const SpectralField& v) {
    const double uv = product_norm(u, v);
    const double r1 = uv / (sobolev_norm(u, SobolevIndex(2)) * sobolev_norm(v, SobolevIndex(0)));
    const double r2 = uv / (sobolev_norm(u, SobolevIndex(1)) * sobolev_norm(v, SobolevIndex(1)));
    if (std::isfinite(r1)) out.c_product_l2 = std::max(out.c_product_l2, r1);
    if (std::isfinite(r2)) out.c_product_h1 = std::max(out.c_product_h1, r2);
  };
  SpectralField one(grid);
  one[0] = Complex(n, 0.0);
  consider(one, one);
  for (int s = 1; s < samples; ++s) {
    const SpectralField u = random_scalar(grid, rng);
    const SpectralField v = random_scalar(grid, rng);
    consider(u, v);
  }
  const double d = grid.dim();
  const double c1 = out.c_product_l2;
  const double c2 = out.c_product_h1;
  const double needed = std::max({2.0 * d * d * c2, 3.0 * d * d * d * c1,
                                  0.5 * d * d * d * (c2 + 2.0 * c1)});
  out.gamma = safety * needed;
  return out;
}

// ---- coincidence ----

CoincidenceResult coincidence_check(const SimConfig& config,
                                    const CoincidenceOptions& options) {
  if (options.ref_factor < 2) throw ConfigError("ref_factor must be >= 2");
  if (options.degree < 1) throw ConfigError("degree must be >= 1");
  config.validate();
  const PhysicalParams params = config.params();
  const Trajectory coarse = run(config);

  SimConfig ref = config;
  ref.dt = config.dt / options.ref_factor;
  const long ref_steps = ref.step_count();
  ref.snapshot_stride = static_cast<int>(std::max<long>(1, ref_steps / 128));
  const Trajectory fine = run(ref);

  std::vector<double> times;
  std::vector<SpectralVector> u;
  std::vector<StressField> sigma;
  for (const auto& s : fine.snapshots) {
    times.push_back(s.t);
    u.push_back(s.u.spectral());
    sigma.push_back(s.sigma);
  }
  const TestPair pair = TestPair::fit(times, u, sigma, options.degree);

  double gamma = options.gamma;
  if (!(gamma > 0.0)) gamma = calibrate_gamma(config.grid(), 200, options.calibration_seed).gamma;

  MarginOptions mo;
  mo.tolerance = options.tolerance;
  CoincidenceResult out;
  out.report = inequality_margin(coarse, pair, params, gamma, default_mode(params), mo);
  out.reference_dt = ref.dt;
  out.reference_snapshots = static_cast<int>(fine.snapshots.size());
  return out;
}

// ---- α sweep ----

std::vector<SweepEntry> alpha_sweep(const SimConfig& base, const std::vector<double>& alphas,
                                    int workers) {
  if (alphas.empty()) throw ConfigError("alpha sweep: no alphas given");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0)) throw ConfigError("alpha sweep: alphas must be positive");
    if (i > 0 && !(alphas[i] < alphas[i - 1])) {
      throw ConfigError("alpha sweep: alphas must be strictly decreasing");
    }
  }
  std::vector<SweepEntry> entries(alphas.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < alphas.size(); i = next++) {
      SweepEntry& e = entries[i];
      e.alpha = alphas[i];
      SimConfig cfg = base;
      cfg.alpha = alphas[i];
      try {
        const Trajectory traj = run(cfg);
        const PhysicalParams params = cfg.params();
        e.e0 = traj.energy.front().energy;
        e.sup_energy = 0.0;
        for (const auto& r : traj.energy) e.sup_energy = std::max(e.sup_energy, r.energy);
        e.bound_ok = e.sup_energy <= e.e0 * (1.0 + 1e-8);
        e.l2_cap = std::sqrt(e.e0 / params.velocity_weight());
        for (const auto& s : traj.snapshots) {
          e.times.push_back(s.t);
          e.l2_norms.push_back(sobolev_norm(s.u.spectral(), SobolevIndex(0)));
        }
        e.completed = true;
      } catch (const std::exception& ex) {
        e.completed = false;
        e.error = ex.what();
      }
    }
  };
  const int count = std::max(1, std::min<int>(workers, static_cast<int>(alphas.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < count; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return entries;
}

}  // namespace malpha
