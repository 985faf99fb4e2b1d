#pragma once

#include <vector>

namespace malpha {

// Samples of f, χ, L, M on increasing times t_0 < t_1 < ... .
struct GronwallInput {
  std::vector<double> times;
  std::vector<double> f;
  std::vector<double> chi;
  std::vector<double> L;
  std::vector<double> M;
};

// exp(∫₀ᵗ L)·[f(0) + ∫₀ᵗ exp(−∫₀ˢ L) M(s) ds] at every sample, with
// trapezoidal quadrature. Evaluated by the equivalent one-step recursion
//   B_{j+1} = e^{ΔI}B_j + h/2 (e^{ΔI}M_j + M_{j+1}),  ΔI = h(L_j + L_{j+1})/2
// which never forms exp(±∫L) on its own and so cannot overflow early.
// Throws ContractViolation if χ or L is negative or the sizes disagree.
std::vector<double> gronwall_bound(const GronwallInput& input);

// f(t) + ∫₀ᵗ χ, trapezoidal.
std::vector<double> gronwall_lhs(const GronwallInput& input);

// Cumulative trapezoidal integral of `values`, starting at zero.
std::vector<double> cumulative_trapezoid(const std::vector<double>& times,
                                         const std::vector<double>& values);

}  // namespace malpha
