#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "malpha/errors.h"

namespace malpha::ode {

using Vec = Eigen::VectorXd;
using Rhs = std::function<Vec(double, const Vec&)>;
// d(t, y) of the one-sided condition (F(t,x) − F(t,y), x − y) ≤ d(t,y)‖x − y‖².
using DBound = std::function<double(double, const Vec&)>;

class OdeBlowup : public NumericalBlowup {
 public:
  using NumericalBlowup::NumericalBlowup;
};

// F(t, x) = A(t)x + f(t, x, x) with ‖f(t, x, y)‖ ≤ c(t)‖x‖‖y‖.
struct Decomposition {
  std::function<Eigen::MatrixXd(double)> linear;
  std::function<Vec(double, const Vec&, const Vec&)> bilinear;
  std::function<double(double)> c;
};

struct OdeProblem {
  std::string name;
  int dimension = 1;
  Rhs rhs;
  DBound d_bound;
  std::optional<Decomposition> decomposition;
  Vec initial;
  double horizon = 1.0;

  // Spot-checks the one-sided condition on random triples (t, x, y) with
  // entries of size `scale`. Throws ConfigError on the first violation.
  void validate_one_sided(int samples, std::uint64_t seed, double scale = 2.0) const;
};

// Smooth approximations F_ε of a possibly discontinuous F.
struct MollifiedFamily {
  std::vector<double> epsilons;
  std::function<Rhs(double)> make;

  Rhs member(double eps) const { return make(eps); }
  // max over probe points of ‖F_ε(t, x) − F(t, x)‖.
  double probe_distance(const OdeProblem& problem, double eps,
                        const std::vector<std::pair<double, Vec>>& probes) const;
  // Largest sampled ‖F_ε(t,x) − F_ε(t,y)‖/‖x − y‖ with ‖x‖∞, ‖y‖∞ ≤ radius.
  double sampled_lipschitz(const OdeProblem& problem, double eps, int samples,
                           std::uint64_t seed, double radius) const;
};

struct Path {
  std::vector<double> t;
  std::vector<Vec> x;
};

// Classical RK4 with fixed step; the last step is shortened to land on
// `horizon`. Throws OdeBlowup on non-finite states.
Path integrate(const Rhs& rhs, const Vec& initial, double horizon, double dt);

// Test curve with exact derivative.
struct TestCurve {
  std::function<Vec(double)> value;
  std::function<Vec(double)> derivative;
};

// Polynomial curve Σ_p c_p t^p; coefficients[p] is a vector.
TestCurve polynomial_curve(std::vector<Vec> coefficients);
TestCurve random_polynomial_curve(int dimension, int degree, std::uint64_t seed,
                                  double scale = 1.0);

struct AbstractReport {
  std::vector<double> times;
  std::vector<double> lhs;
  std::vector<double> rhs;
  std::vector<double> margin;
  double min_margin = 0.0;
};

// ‖u − v‖² against
//   exp(∫2d(s,v))·[‖a − v(0)‖² + 2∫exp(−∫2d)(E(s,v), u − v) ds],
// E(t, v) = −v' + F(t, v), on the path's time grid.
AbstractReport abstract_inequality_margin(const Path& path, const TestCurve& v,
                                          const OdeProblem& problem);

// d(t, y) = 2c(t)‖y‖. Checks (F(t,x), x) ≤ 0 on `samples` random points first.
DBound d_from_decomposition(const OdeProblem& problem, int samples = 1000,
                            std::uint64_t seed = 0);

struct AprioriReport {
  std::vector<double> times;
  std::vector<double> norm_squared;
  std::vector<double> bound;
  bool holds = false;
};

// ‖u(t)‖² ≤ exp(∫2(d(s,0)+¼))·[‖a‖² + 2∫exp(−∫2(d+¼))‖F(s,0)‖² ds].
AprioriReport apriori_bound(const OdeProblem& problem, const Path& path);

// Demo problems.
OdeProblem linear_problem();                  // F = −x in R²
OdeProblem rotation_problem(double beta = 1.0);  // F = (1 + βx₁)Jx in R²
OdeProblem sgn_problem();                     // F = −sgn x in R, a = 1
MollifiedFamily sgn_family();                 // −tanh(x/ε)
OdeProblem affine_problem();                  // F = −x + sin t in R

// Named lookup for the CLI: "linear", "rotation", "sgn", "affine".
OdeProblem demo_problem(const std::string& name);

}  // namespace malpha::ode
