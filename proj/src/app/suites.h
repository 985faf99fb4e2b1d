#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "malpha/abstract_ode.h"

namespace malpha::app {

// Largest relative defects of the vanishing identities over random fields.
struct IdentityResult {
  int samples = 0;
  double trilinear = 0.0;    // / ‖κ‖₁³
  double transport = 0.0;    // / (‖u‖₁‖τ‖₁²)
  double commutator = 0.0;   // / (‖σ‖₀²‖u‖₁)
  double tolerance = 1e-10;
  bool pass = false;
};

IdentityResult identity_suite(int dim, int n, double alpha, int samples, std::uint64_t seed);

struct GronwallCase {
  std::string name;
  double error = 0.0;      // max relative deviation from the reference
  double tolerance = 0.0;
  bool pass = false;
};

// Closed-form cases at 10⁴ samples and a random step-function case compared
// against a fine RK4 solution of g' = Lg + M.
std::vector<GronwallCase> gronwall_selftest(std::uint64_t seed);

struct OdeDemoResult {
  std::string name;
  double min_margin = 0.0;       // over all test curves
  bool apriori_holds = false;
  // sgn only: sup |x_ε − max(0, 1 − t)| per ε and its allowance.
  std::vector<double> epsilons;
  std::vector<double> sup_errors;
  std::vector<double> allowances;
  bool pass = false;
  ode::Path path;                // representative path
  ode::AprioriReport apriori;    // for `path`
};

OdeDemoResult ode_demo(const std::string& name, double dt, int curves, std::uint64_t seed);

}  // namespace malpha::app
