#pragma once

#include "malpha/fields.h"
#include "malpha/test_pair.h"

namespace malpha {

// Σ_i u_i ∂_i q, dealiased.
SpectralField advect(const SpectralVector& u, const SpectralField& q);
SpectralVector advect(const SpectralVector& u, const SpectralVector& q);
StressField advect(const SpectralVector& u, const StressField& q);

// Σ_i v_i ∇u_i, dealiased.
SpectralVector grad_transpose(const SpectralVector& v, const SpectralVector& u);

// Right-hand sides of the transport system, shared by the time stepper and
// the residual operators:
//   momentum = δ·P[−Σ u_i ∂_i v − Σ v_i ∇u_i + div σ],  v = Δ_α u
//   stress   = δ·[−u·∇σ − (σW − Wσ) + 2μE(u)]   (− δσ/λ if requested)
struct Tendency {
  SpectralVector momentum;
  StressField stress;
};

Tendency transport_tendency(const SpectralVector& u, const StressField& sigma,
                            const PhysicalParams& params, double delta,
                            bool include_relaxation);

// Formal residuals of a test pair at time t:
//   E₁ = −∂_t Δ_α ζ + momentum tendency,  E₂ = −∂_t θ + stress tendency
// including relaxation. E₁ is divergence-free, E₂ symmetric.
struct Residuals {
  SpectralVector e1;
  StressField e2;
};

Residuals residuals(const TestPair& test, double t, const PhysicalParams& params,
                    double delta);
Residuals residuals(const SpectralVector& zeta, const SpectralVector& zeta_dot,
                    const StressField& theta, const StressField& theta_dot,
                    const PhysicalParams& params, double delta);
SpectralVector e1_residual(const TestPair& test, double t,
                           const PhysicalParams& params, double delta);
StressField e2_residual(const TestPair& test, double t,
                        const PhysicalParams& params, double delta);

enum class CheckMode { kMaxwell, kEulerAlpha };

// Γ(t) = γ·max{1, 1/α²}·(‖Δ_αζ‖₁ + ‖ζ‖₁ + α²‖ζ‖₃ + (1+μ)‖θ‖₂/μ).
// The Euler-α variant drops the θ term.
double gamma_weight(const SpectralVector& zeta, const StressField& theta,
                    const PhysicalParams& params, double gamma_const,
                    CheckMode mode);
double gamma_weight(const TestPair& test, double t, const PhysicalParams& params,
                    double gamma_const, CheckMode mode);

// |−Σ_i (κ_i Δ_ακ, ∂_iκ) + Σ_i ((Δ_ακ)_i ∇κ_i, κ)|
double trilinear_identity_defect(const SpectralVector& kappa, double alpha);
// |(u·∇τ, τ)|
double transport_skew_defect(const SpectralVector& u, const SpectralField& tau);
double transport_skew_defect(const SpectralVector& u, const StressField& tau);
// |(σW − Wσ, σ)|
double commutator_orthogonality_defect(const StressField& sigma,
                                       const AntisymmetricField& w);

}  // namespace malpha
