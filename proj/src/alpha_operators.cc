#include "malpha/alpha_operators.h"

#include <cmath>

#include "malpha/errors.h"

namespace malpha {

namespace {

// u in real space, reused across all the products of one evaluation.
struct PhysicalVector {
  std::vector<ScalarField> c;
  explicit PhysicalVector(const SpectralVector& u) : c(to_physical(u)) {}
};

SpectralField advect_physical(const PhysicalVector& u, const SpectralField& q) {
  const Grid& grid = q.grid();
  ScalarField acc(grid);
  for (int i = 0; i < grid.dim(); ++i) {
    const ScalarField dq = to_physical(derivative(q, i));
    const ScalarField& ui = u.c[i];
    for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += ui[p] * dq[p];
  }
  return dealias(to_spectral(acc));
}

SpectralVector grad_transpose_physical(const PhysicalVector& v,
                                       const SpectralVector& u) {
  const Grid& grid = u.front().grid();
  const int d = grid.dim();
  std::vector<ScalarField> acc(d, ScalarField(grid));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const ScalarField dui = to_physical(derivative(u[i], j));
      const ScalarField& vi = v.c[i];
      for (std::size_t p = 0; p < dui.size(); ++p) acc[j][p] += vi[p] * dui[p];
    }
  }
  SpectralVector out = to_spectral(acc);
  dealias_in_place(out);
  return out;
}

}  // namespace

SpectralField advect(const SpectralVector& u, const SpectralField& q) {
  return advect_physical(PhysicalVector(u), q);
}

SpectralVector advect(const SpectralVector& u, const SpectralVector& q) {
  const PhysicalVector up(u);
  SpectralVector out;
  for (const auto& c : q) out.push_back(advect_physical(up, c));
  return out;
}

StressField advect(const SpectralVector& u, const StressField& q) {
  const PhysicalVector up(u);
  StressField out(q.grid());
  for (std::size_t e = 0; e < q.upper().size(); ++e) {
    out.upper()[e] = advect_physical(up, q.upper()[e]);
  }
  return out;
}

SpectralVector grad_transpose(const SpectralVector& v, const SpectralVector& u) {
  return grad_transpose_physical(PhysicalVector(v), u);
}

Tendency transport_tendency(const SpectralVector& u, const StressField& sigma,
                            const PhysicalParams& params, double delta,
                            bool include_relaxation) {
  const Grid& grid = u.front().grid();
  const int d = grid.dim();
  Tendency out{zero_vector(grid, d), StressField(grid)};
  if (delta == 0.0) return out;

  const PhysicalVector up(u);
  const SpectralVector v = helmholtz_apply(u, params.alpha());
  const PhysicalVector vp(v);

  SpectralVector m = divergence(sigma);
  for (int c = 0; c < d; ++c) m[c] -= advect_physical(up, v[c]);
  m -= grad_transpose_physical(vp, u);
  m = leray_project(std::move(m));
  for (auto& c : m) c[0] = Complex(0.0, 0.0);
  m *= delta;
  out.momentum = std::move(m);

  StressField s = (2.0 * params.mu()) * strain(u);
  for (std::size_t e = 0; e < sigma.upper().size(); ++e) {
    s.upper()[e] -= advect_physical(up, sigma.upper()[e]);
  }
  s -= corotational_commutator(sigma, vorticity(u));
  if (include_relaxation) s -= (1.0 / params.lambda()) * sigma;
  s *= delta;
  out.stress = std::move(s);
  return out;
}

Residuals residuals(const SpectralVector& zeta, const SpectralVector& zeta_dot,
                    const StressField& theta, const StressField& theta_dot,
                    const PhysicalParams& params, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw ContractViolation("residuals: delta must lie in [0, 1]");
  }
  Tendency tend = transport_tendency(zeta, theta, params, delta, true);
  Residuals out{std::move(tend.momentum), std::move(tend.stress)};
  out.e1 -= helmholtz_apply(zeta_dot, params.alpha());
  out.e2 -= theta_dot;
  return out;
}

Residuals residuals(const TestPair& test, double t, const PhysicalParams& params,
                    double delta) {
  return residuals(test.zeta(t), test.zeta_dot(t), test.theta(t), test.theta_dot(t),
                   params, delta);
}

SpectralVector e1_residual(const TestPair& test, double t,
                           const PhysicalParams& params, double delta) {
  return residuals(test, t, params, delta).e1;
}

StressField e2_residual(const TestPair& test, double t,
                        const PhysicalParams& params, double delta) {
  return residuals(test, t, params, delta).e2;
}

double gamma_weight(const SpectralVector& zeta, const StressField& theta,
                    const PhysicalParams& params, double gamma_const,
                    CheckMode mode) {
  if (!(gamma_const > 0.0)) throw ContractViolation("gamma_weight: gamma must be positive");
  const double alpha = params.alpha();
  const double a2 = alpha * alpha;
  double sum = sobolev_norm(helmholtz_apply(zeta, alpha), SobolevIndex(1)) +
               sobolev_norm(zeta, SobolevIndex(1)) +
               a2 * sobolev_norm(zeta, SobolevIndex(3));
  if (mode == CheckMode::kMaxwell) {
    const double th = stress_norm(theta, SobolevIndex(2));
    if (th > 0.0) {
      const double mu = params.mu();
      if (!(mu > 0.0)) {
        throw ContractViolation("gamma_weight: Maxwell mode with nonzero theta needs mu > 0");
      }
      sum += (1.0 + mu) * th / mu;
    }
  }
  return gamma_const * std::max(1.0, 1.0 / a2) * sum;
}

double gamma_weight(const TestPair& test, double t, const PhysicalParams& params,
                    double gamma_const, CheckMode mode) {
  return gamma_weight(test.zeta(t), test.theta(t), params, gamma_const, mode);
}

double trilinear_identity_defect(const SpectralVector& kappa, double alpha) {
  const SpectralVector v = helmholtz_apply(kappa, alpha);
  const PhysicalVector kp(kappa);
  SpectralVector transported;
  for (const auto& c : kappa) transported.push_back(advect_physical(kp, c));
  const double first = sobolev_inner(v, transported, SobolevIndex(0));
  const double second =
      sobolev_inner(grad_transpose_physical(PhysicalVector(v), kappa), kappa,
                    SobolevIndex(0));
  return std::abs(-first + second);
}

double transport_skew_defect(const SpectralVector& u, const SpectralField& tau) {
  return std::abs(sobolev_inner(advect(u, tau), tau, SobolevIndex(0)));
}

double transport_skew_defect(const SpectralVector& u, const StressField& tau) {
  return std::abs(stress_inner(advect(u, tau), tau, SobolevIndex(0)));
}

double commutator_orthogonality_defect(const StressField& sigma,
                                       const AntisymmetricField& w) {
  return std::abs(stress_inner(corotational_commutator(sigma, w), sigma, SobolevIndex(0)));
}

}  // namespace malpha
