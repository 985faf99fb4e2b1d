#pragma once

#include <string>

#include "malpha/solver.h"

namespace malpha {

// Checkpoint layout (little-endian):
//   "AFLW" | u32 version | u32 dim | u32 N | f64 t, α, η, λ, ε, δ |
//   f64 real-space samples, row-major: velocity components, then the stress
//   upper triangle (0,0) (0,1) .. (d-1,d-1).
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  double t;
  double alpha;
  double eta;
  double lambda;
  double epsilon;
  double delta;
  VelocityField u;
  StressField sigma;
};

void write_checkpoint(const std::string& path, const SolverState& state,
                      const SimConfig& config);
Checkpoint read_checkpoint(const std::string& path);

// Trajectory layout (little-endian):
//   "AFLT" | u32 version | u64 length + config JSON | u64 snapshot count |
//   per snapshot: f64 t, f64 energy, spectral coefficients as (re, im) f64
//   pairs for the velocity components then the stress upper triangle |
//   u64 record count | records (t, energy, dissipation) | f64 drift.
// Spectral payloads make the round trip bit-exact.
inline constexpr std::uint32_t kTrajectoryVersion = 1;

void write_trajectory(const Trajectory& trajectory, const std::string& path);
Trajectory read_trajectory(const std::string& path);

}  // namespace malpha
