#include "malpha/solver.h"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "malpha/alpha_operators.h"
#include "malpha/trajectory_io.h"

namespace malpha {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw ConfigError("config key \"" + key + "\": " + why);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void SimConfig::validate() const {
  if (dim != 2 && dim != 3) bad("grid.dim", "must be 2 or 3");
  if (n < 8 || (n & (n - 1)) != 0) bad("grid.n", "must be a power of two >= 8");
  if (!finite_positive(alpha)) bad("alpha", "must be > 0");
  if (!std::isfinite(eta) || eta < 0.0) bad("eta", "must be >= 0");
  if (!finite_positive(lambda)) bad("lambda", "must be > 0");
  if (!std::isfinite(epsilon) || epsilon < 0.0) bad("epsilon", "must be >= 0");
  if (!std::isfinite(delta) || delta < 0.0 || delta > 1.0) bad("delta", "must lie in [0, 1]");
  if (!finite_positive(dt)) bad("dt", "must be > 0");
  if (!std::isfinite(t_end) || t_end < 0.0) bad("t_end", "must be >= 0");
  if (snapshot_stride < 1) bad("snapshot_stride", "must be >= 1");
  if (!std::isfinite(amplitude)) bad("amplitude", "must be finite");
  if (initial_stress != "zero" && initial_stress != "random") {
    bad("initial_stress", "must be \"zero\" or \"random\"");
  }
  if (!std::isfinite(stress_amplitude)) bad("stress_amplitude", "must be finite");
  if (stress_max_wavenumber < 0) bad("stress_max_wavenumber", "must be >= 0");
  if (!(spectrum_decay > 1.0) || !std::isfinite(spectrum_decay)) {
    bad("spectrum_decay", "must be > 1");
  }
  if (!finite_positive(cfl_max)) bad("cfl_max", "must be > 0");
  if (eta == 0.0 && initial_stress == "random" && stress_amplitude != 0.0) {
    bad("initial_stress", "the Euler-alpha model (eta = 0) carries no stress");
  }
  step_count();
}

long SimConfig::step_count() const {
  const double ratio = t_end / dt;
  const long steps = std::llround(ratio);
  if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio)) {
    bad("t_end", "must be an integer multiple of dt");
  }
  return steps;
}

const std::vector<std::string>& initial_condition_presets() {
  static const std::vector<std::string> presets = {"taylor-green", "shear",
                                                   "random-spectrum", "zero"};
  return presets;
}

namespace {

VelocityField analytic_velocity(const Grid& grid, const std::string& name) {
  const int d = grid.dim();
  std::vector<ScalarField> u(d, ScalarField(grid));
  for (std::size_t p = 0; p < grid.real_size(); ++p) {
    const auto x = grid.point(p);
    if (name == "taylor-green") {
      if (d == 2) {
        u[0][p] = std::sin(x[0]) * std::cos(x[1]);
        u[1][p] = -std::cos(x[0]) * std::sin(x[1]);
      } else {
        u[0][p] = std::sin(x[0]) * std::cos(x[1]) * std::cos(x[2]);
        u[1][p] = -std::cos(x[0]) * std::sin(x[1]) * std::cos(x[2]);
      }
    } else {
      u[0][p] = std::sin(x[1]);
    }
  }
  SpectralVector spec = to_spectral(u);
  dealias_in_place(spec);
  return VelocityField::project(std::move(spec));
}

double rms(const SpectralVector& u) {
  const Grid& grid = u.front().grid();
  return std::sqrt(sobolev_inner(u, u, SobolevIndex(0)) / grid.volume());
}

StressField initial_stress(const SimConfig& config) {
  const Grid grid = config.grid();
  if (config.initial_stress == "zero" || config.stress_amplitude == 0.0) {
    return StressField(grid);
  }
  StressField s = random_symmetric(grid, config.seed + 1, config.stress_max_wavenumber,
                                   config.spectrum_decay);
  const double norm = std::sqrt(stress_inner(s, s, SobolevIndex(0)) / grid.volume());
  if (norm > 0.0) s *= config.stress_amplitude / norm;
  return s;
}

}  // namespace

InitialData initial_condition(const std::string& name, const SimConfig& config) {
  const Grid grid = config.grid();
  const auto& presets = initial_condition_presets();
  if (std::find(presets.begin(), presets.end(), name) == presets.end()) {
    if (!std::filesystem::exists(name)) {
      std::ostringstream msg;
      msg << "unknown initial condition \"" << name << "\"; presets:";
      for (const auto& p : presets) msg << ' ' << p;
      msg << " (or a checkpoint path)";
      throw ConfigError(msg.str());
    }
    Checkpoint cp = read_checkpoint(name);
    if (!(cp.u.grid() == grid)) {
      throw ConfigError("checkpoint " + name + " was written on a different grid");
    }
    SpectralVector u = cp.u.spectral();
    dealias_in_place(u);
    StressField sigma = cp.sigma;
    dealias_in_place(sigma);
    return {VelocityField::project(std::move(u)), std::move(sigma)};
  }

  StressField sigma = initial_stress(config);
  if (name == "zero") return {VelocityField::zero(grid), std::move(sigma)};
  if (name == "random-spectrum") {
    SpectralVector u = random_divfree(grid, config.seed, config.spectrum_decay).spectral();
    // Normalize to mean |u|² = 1/2, the Taylor-Green value in 2D.
    const double r = rms(u);
    if (r > 0.0) u *= config.amplitude * std::sqrt(0.5) / r;
    return {VelocityField::project(std::move(u)), std::move(sigma)};
  }
  SpectralVector u = analytic_velocity(grid, name).spectral();
  u *= config.amplitude;
  return {VelocityField::project(std::move(u)), std::move(sigma)};
}

double dissipation_rate(const SpectralVector& u, const StressField& sigma,
                        const SimConfig& config) {
  const PhysicalParams params = config.params();
  const double eps = config.epsilon;
  double rate = 0.0;
  if (eps > 0.0) {
    rate += 2.0 * params.velocity_weight() * eps * sobolev_inner(u, u, SobolevIndex(3));
    rate += 2.0 * eps * stress_inner(sigma, sigma, SobolevIndex(2));
  }
  rate += 2.0 * config.delta / config.lambda * stress_inner(sigma, sigma, SobolevIndex(0));
  return rate;
}

// ---- time stepping ----

ImexIntegrator::ImexIntegrator(const SimConfig& config)
    : config_(config), params_(config.params()) {
  config_.validate();
  const Grid grid = config_.grid();
  const ModeTable& modes = mode_table(grid);
  const double a2 = config_.alpha * config_.alpha;
  decay_v_.resize(grid.spectral_size());
  decay_s_.resize(grid.spectral_size());
  for (std::size_t i = 0; i < grid.spectral_size(); ++i) {
    const double b = 1.0 + modes.k2[i];
    const double lv = config_.epsilon * b * b * b / (1.0 + a2 * modes.k2[i]);
    const double ls = config_.epsilon * b * b + config_.delta / config_.lambda;
    decay_v_[i] = std::exp(-lv * config_.dt);
    decay_s_[i] = std::exp(-ls * config_.dt);
  }
}

namespace {

void scale_modes(SpectralField& f, const std::vector<double>& factor) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] *= factor[i];
}

void scale_modes(SpectralVector& v, const std::vector<double>& factor) {
  for (auto& c : v) scale_modes(c, factor);
}

void scale_modes(StressField& s, const std::vector<double>& factor) {
  for (auto& e : s.upper()) scale_modes(e, factor);
}

bool finite(const SpectralVector& v) {
  for (const auto& c : v) {
    if (!c.finite()) return false;
  }
  return true;
}

bool finite(const StressField& s) {
  for (const auto& e : s.upper()) {
    if (!e.finite()) return false;
  }
  return true;
}

// Wavevector with the largest coefficient growth between two states.
std::array<int, 3> worst_mode(const SpectralVector& before, const SpectralVector& after) {
  const Grid& grid = before.front().grid();
  const ModeTable& modes = mode_table(grid);
  double worst = -1.0;
  std::array<int, 3> k{0, 0, 0};
  for (std::size_t i = 0; i < grid.spectral_size(); ++i) {
    double a = 0.0;
    double b = 0.0;
    for (std::size_t c = 0; c < before.size(); ++c) {
      a += std::norm(before[c][i]);
      b += std::norm(after[c][i]);
    }
    const double growth = std::isfinite(b) ? b / std::max(a, 1e-300)
                                           : std::numeric_limits<double>::infinity();
    if (growth > worst) {
      worst = growth;
      k = modes.k[i];
    }
  }
  return k;
}

double relative_divergence(const SpectralVector& v) {
  const Grid& grid = v.front().grid();
  const ModeTable& modes = mode_table(grid);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 1; i < grid.spectral_size(); ++i) {
    Complex kv(0.0, 0.0);
    for (std::size_t c = 0; c < v.size(); ++c) {
      kv += static_cast<double>(modes.k[i][c]) * v[c][i];
      den += modes.weight[i] * std::norm(v[c][i]);
    }
    num += modes.weight[i] * std::norm(kv) / modes.k2[i];
  }
  return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

}  // namespace

SolverState ImexIntegrator::step(const SolverState& state) {
  const double dt = config_.dt;
  const double alpha = config_.alpha;
  const SpectralVector& u0 = state.u.spectral();

  const double umax = [&] {
    double m = 0.0;
    for (const auto& c : state.u.physical()) m = std::max(m, c.max_abs());
    return m;
  }();
  const double cfl = dt * umax * config_.n;
  if (cfl > config_.cfl_max) {
    std::ostringstream msg;
    msg << "CFL violated at t=" << state.t << ": dt*max|u|*N = " << cfl
        << " > cfl_max = " << config_.cfl_max;
    throw CflViolation(msg.str());
  }

  const SpectralVector v0 = helmholtz_apply(u0, alpha);
  const Tendency n0 = transport_tendency(u0, state.sigma, params_, config_.delta, false);

  // Predictor: y* = E(y + dt N(y)).
  SpectralVector v1 = v0;
  for (std::size_t c = 0; c < v1.size(); ++c) v1[c].add_scaled(dt, n0.momentum[c]);
  scale_modes(v1, decay_v_);
  StressField s1 = state.sigma + dt * n0.stress;
  scale_modes(s1, decay_s_);
  const SpectralVector u1 = helmholtz_invert(v1, alpha);
  const Tendency n1 = transport_tendency(u1, s1, params_, config_.delta, false);

  // Corrector: y_{n+1} = E y + dt/2 (E N(y) + N(y*)).
  SpectralVector v2 = v0 + (0.5 * dt) * n0.momentum;
  scale_modes(v2, decay_v_);
  for (std::size_t c = 0; c < v2.size(); ++c) v2[c].add_scaled(0.5 * dt, n1.momentum[c]);
  StressField s2 = state.sigma + (0.5 * dt) * n0.stress;
  scale_modes(s2, decay_s_);
  s2 += (0.5 * dt) * n1.stress;

  const double t_next = state.t + dt;
  if (!finite(v2) || !finite(s2)) {
    std::ostringstream msg;
    const auto k = worst_mode(v0, v2);
    msg << "non-finite state at t=" << t_next << ", largest growth at k=(" << k[0]
        << ", " << k[1] << ", " << k[2] << ")";
    throw IntegrationBlowup(msg.str(), state, t_next, k);
  }

  last_drift_ = relative_divergence(v2);
  dealias_in_place(v2);
  dealias_in_place(s2);
  VelocityField u_next = VelocityField::project(helmholtz_invert(std::move(v2), alpha));
  return SolverState{t_next, std::move(u_next), std::move(s2), state.step_count + 1};
}

SolverState imex_step(const SolverState& state, const SimConfig& config) {
  ImexIntegrator integrator(config);
  return integrator.step(state);
}

Trajectory run_from(const SimConfig& config, const VelocityField& u0,
                    const StressField& sigma0) {
  config.validate();
  const long steps = config.step_count();
  const PhysicalParams params = config.params();
  if (params.euler_alpha() && stress_norm(sigma0, SobolevIndex(0)) != 0.0) {
    throw ConfigError("the Euler-alpha model (eta = 0) requires zero initial stress");
  }
  ImexIntegrator integrator(config);

  Trajectory traj;
  traj.config = config;
  SolverState state{0.0, u0, sigma0, 0};
  auto record = [&](const SolverState& s, double e) {
    traj.snapshots.push_back(Snapshot{s.t, s.u, s.sigma, e});
  };
  double e = energy(state.u, state.sigma, params);
  traj.energy.push_back({0.0, e, dissipation_rate(state.u.spectral(), state.sigma, config)});
  record(state, e);
  for (long n = 1; n <= steps; ++n) {
    SolverState next = integrator.step(state);
    // Exact multiples of dt keep snapshot times reproducible.
    next.t = static_cast<double>(n) * config.dt;
    traj.max_divergence_drift =
        std::max(traj.max_divergence_drift, integrator.last_divergence_drift());
    e = energy(next.u, next.sigma, params);
    traj.energy.push_back({next.t, e, dissipation_rate(next.u.spectral(), next.sigma, config)});
    if (n % config.snapshot_stride == 0 || n == steps) record(next, e);
    state = std::move(next);
  }
  return traj;
}

Trajectory run(const SimConfig& config) {
  config.validate();
  InitialData init = initial_condition(config.initial_condition, config);
  if (config.scale_initial_data && config.delta != 1.0) {
    SpectralVector u = init.u.spectral();
    u *= config.delta;
    init.u = VelocityField::project(std::move(u));
    init.sigma *= config.delta;
  }
  return run_from(config, init.u, init.sigma);
}

}  // namespace malpha
