#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "malpha/alpha_operators.h"
#include "malpha/solver.h"

namespace malpha {

struct DissipativeReport {
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> margin;
  // ∫₀ᵗ Γ at each sample.
  std::vector<double> gamma_integral;
  double gamma_used = 0.0;
  double min_margin = 0.0;
  double tolerance = 0.0;
  // max(E(0), 1e-12): the margin is judged relative to this.
  double scale = 0.0;
  bool pass = false;
};

struct MarginOptions {
  double tolerance = 1e-6;
  // δ of the residuals; the dissipative-solution definition uses 1.
  double delta = 1.0;
  // Initial data a, σ₀. Defaults to the first snapshot.
  std::optional<SpectralVector> initial_velocity;
  std::optional<StressField> initial_stress;
};

// Both sides of the dissipative inequality at every snapshot:
//   lhs = w‖u−ζ‖_V² + ‖σ−θ‖²
//   rhs = exp(∫Γ)[w‖a−ζ(0)‖_V² + ‖σ₀−θ(0)‖² + ∫exp(−∫Γ)(2w(E₁,u−ζ) + 2(E₂,σ−θ))]
// with w = 2μ in Maxwell mode. Euler-α mode uses w = 1, θ = 0 and drops the
// stress terms.
DissipativeReport inequality_margin(const Trajectory& trajectory, const TestPair& test,
                                    const PhysicalParams& params, double gamma_const,
                                    CheckMode mode, const MarginOptions& options = {});

CheckMode default_mode(const PhysicalParams& params);

// inequality_margin with the zero test pair: E(t) against E(0).
DissipativeReport dissipative_estimate(const Trajectory& trajectory,
                                       const PhysicalParams& params,
                                       const MarginOptions& options = {});

struct GammaCalibration {
  double gamma = 0.0;
  // Largest sampled ‖uv‖/(‖u‖₂‖v‖) and ‖uv‖/(‖u‖₁‖v‖₁).
  double c_product_l2 = 0.0;
  double c_product_h1 = 0.0;
  double safety = 2.0;
};

// Sampled product constants combined into the weight constant:
//   γ = safety · max(2d²C₂, 3d³C₁, d³(C₂ + 2C₁)/2)
// with C₁ = c_product_l2, C₂ = c_product_h1. The constant pair is always
// part of the sample.
GammaCalibration calibrate_gamma(const Grid& grid, int samples, std::uint64_t seed,
                                 double safety = 2.0);

struct CoincidenceOptions {
  int ref_factor = 8;
  int degree = 10;
  double gamma = 0.0;  // <= 0 means calibrate
  double tolerance = 1e-6;
  std::uint64_t calibration_seed = 0;
};

struct CoincidenceResult {
  DissipativeReport report;
  double reference_dt = 0.0;
  int reference_snapshots = 0;
};

// Runs `config`, builds a polynomial-in-time test pair from a run of the same
// problem at dt/ref_factor, and measures the inequality of the coarse run
// against it. Both runs approximate the same smooth solution, so the margin
// shrinks with the discretization error.
CoincidenceResult coincidence_check(const SimConfig& config,
                                    const CoincidenceOptions& options);

struct SweepEntry {
  double alpha = 0.0;
  bool completed = false;
  std::string error;
  double e0 = 0.0;
  double sup_energy = 0.0;
  bool bound_ok = false;
  // ‖u‖₀ at each step and its energy cap sqrt(E(0)/w).
  std::vector<double> times;
  std::vector<double> l2_norms;
  double l2_cap = 0.0;
};

// Independent runs of `base` at each α, at most `workers` at a time.
// Failed runs are recorded and the sweep continues.
std::vector<SweepEntry> alpha_sweep(const SimConfig& base, const std::vector<double>& alphas,
                                    int workers = 1);

}  // namespace malpha
