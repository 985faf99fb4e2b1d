#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "malpha/errors.h"
#include "malpha/fields.h"

namespace malpha {

struct SimConfig {
  int dim = 2;
  int n = 64;
  double alpha = 1.0;
  double eta = 1.0;
  double lambda = 1.0;
  double epsilon = 0.0;
  double delta = 1.0;
  double dt = 1e-3;
  double t_end = 0.0;
  int snapshot_stride = 1;
  // Preset name or checkpoint path.
  std::string initial_condition = "taylor-green";
  double amplitude = 1.0;
  // "zero" or "random".
  std::string initial_stress = "zero";
  double stress_amplitude = 1.0;
  int stress_max_wavenumber = 4;
  double spectrum_decay = 3.0;
  std::uint64_t seed = 0;
  // Multiply the initial data by delta.
  bool scale_initial_data = true;
  // Bound on dt·max|u|·N.
  double cfl_max = 1.0;

  Grid grid() const { return Grid(dim, n); }
  PhysicalParams params() const { return PhysicalParams(eta, lambda, alpha); }
  // Throws ConfigError naming the offending key.
  void validate() const;
  long step_count() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct SolverState {
  double t = 0.0;
  VelocityField u;
  StressField sigma;
  long step_count = 0;
};

struct Snapshot {
  double t;
  VelocityField u;
  StressField sigma;
  double energy;
};

struct EnergyRecord {
  double t;
  double energy;
  // 2w_uε‖u‖₃² + (2δ/λ)‖σ‖² + 2ε‖σ‖₂²
  double dissipation;
};

struct Trajectory {
  SimConfig config;
  std::vector<Snapshot> snapshots;
  std::vector<EnergyRecord> energy;
  // Largest relative divergence seen before re-projection.
  double max_divergence_drift = 0.0;
};

class IntegrationBlowup : public NumericalBlowup {
 public:
  IntegrationBlowup(const std::string& what, SolverState last_good, double time,
                    std::array<int, 3> mode)
      : NumericalBlowup(what), last_good_(std::move(last_good)), time_(time), mode_(mode) {}
  const SolverState& last_good() const { return last_good_; }
  double time() const { return time_; }
  const std::array<int, 3>& mode() const { return mode_; }

 private:
  SolverState last_good_;
  double time_;
  std::array<int, 3> mode_;
};

const std::vector<std::string>& initial_condition_presets();

struct InitialData {
  VelocityField u;
  StressField sigma;
};

// Unscaled initial data for a preset or checkpoint path.
InitialData initial_condition(const std::string& name, const SimConfig& config);

// Dissipation rate of the regularized system at a state.
double dissipation_rate(const SpectralVector& u, const StressField& sigma,
                        const SimConfig& config);

// Integrating-factor Heun scheme: the diagonal linear symbols
//   ε(1+|k|²)³/(1+α²|k|²) on v = Δ_α u  and  ε(1+|k|²)² + δ/λ on σ
// are integrated exactly, the transport terms explicitly.
class ImexIntegrator {
 public:
  explicit ImexIntegrator(const SimConfig& config);

  SolverState step(const SolverState& state);
  double last_divergence_drift() const { return last_drift_; }

 private:
  SimConfig config_;
  PhysicalParams params_;
  std::vector<double> decay_v_;
  std::vector<double> decay_s_;
  double last_drift_ = 0.0;
};

SolverState imex_step(const SolverState& state, const SimConfig& config);

// Integrates from the configured initial data to t_end.
Trajectory run(const SimConfig& config);
// Integrates from an explicit initial state (no delta scaling).
Trajectory run_from(const SimConfig& config, const VelocityField& u0,
                    const StressField& sigma0);

}  // namespace malpha
