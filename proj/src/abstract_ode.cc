#include "malpha/abstract_ode.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include "malpha/gronwall.h"

namespace malpha::ode {

namespace {

Vec random_vec(int dim, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  return v;
}

bool finite(const Vec& v) { return v.allFinite(); }

}  // namespace

void OdeProblem::validate_one_sided(int samples, std::uint64_t seed, double scale) const {
  if (!rhs || !d_bound) throw ConfigError("ode problem " + name + ": rhs and d are required");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> time(0.0, horizon);
  for (int s = 0; s < samples; ++s) {
    const double t = time(rng);
    const Vec x = random_vec(dimension, rng, scale);
    const Vec y = random_vec(dimension, rng, scale);
    const Vec z = x - y;
    const double lhs = (rhs(t, x) - rhs(t, y)).dot(z);
    const double allowed = d_bound(t, y) * z.squaredNorm();
    const double slack = 1e-12 * (1.0 + std::abs(lhs) + std::abs(allowed));
    if (lhs > allowed + slack) {
      std::ostringstream msg;
      msg << "ode problem " << name << ": one-sided condition fails at t=" << t
          << " (lhs " << lhs << " > " << allowed << ")";
      throw ConfigError(msg.str());
    }
  }
}

double MollifiedFamily::probe_distance(const OdeProblem& problem, double eps,
                                       const std::vector<std::pair<double, Vec>>& probes) const {
  const Rhs f = member(eps);
  double worst = 0.0;
  for (const auto& [t, x] : probes) {
    worst = std::max(worst, (f(t, x) - problem.rhs(t, x)).norm());
  }
  return worst;
}

double MollifiedFamily::sampled_lipschitz(const OdeProblem& problem, double eps, int samples,
                                          std::uint64_t seed, double radius) const {
  const Rhs f = member(eps);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-radius, radius);
  std::uniform_real_distribution<double> time(0.0, problem.horizon);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Vec x(problem.dimension), y(problem.dimension);
    for (int i = 0; i < problem.dimension; ++i) {
      x[i] = coord(rng);
      y[i] = coord(rng);
    }
    const double dist = (x - y).norm();
    if (dist == 0.0) continue;
    const double t = time(rng);
    worst = std::max(worst, (f(t, x) - f(t, y)).norm() / dist);
  }
  return worst;
}

Path integrate(const Rhs& rhs, const Vec& initial, double horizon, double dt) {
  if (!(dt > 0.0) || !(horizon >= 0.0)) throw ConfigError("integrate: need dt > 0, horizon >= 0");
  const long steps = static_cast<long>(std::ceil(horizon / dt - 1e-9));
  Path path;
  path.t.reserve(steps + 1);
  path.x.reserve(steps + 1);
  Vec x = initial;
  path.t.push_back(0.0);
  path.x.push_back(x);
  for (long n = 0; n < steps; ++n) {
    const double t = n * dt;
    const double h = std::min(dt, horizon - t);
    const Vec k1 = rhs(t, x);
    const Vec k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
    const Vec k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
    const Vec k4 = rhs(t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!finite(x)) {
      std::ostringstream msg;
      msg << "ode integration produced non-finite state at t=" << t + h;
      throw OdeBlowup(msg.str());
    }
    path.t.push_back(n + 1 == steps ? horizon : (n + 1) * dt);
    path.x.push_back(x);
  }
  return path;
}

TestCurve polynomial_curve(std::vector<Vec> coefficients) {
  auto c = std::make_shared<std::vector<Vec>>(std::move(coefficients));
  TestCurve curve;
  curve.value = [c](double t) {
    Vec acc = c->back();
    for (int p = static_cast<int>(c->size()) - 2; p >= 0; --p) acc = acc * t + (*c)[p];
    return acc;
  };
  curve.derivative = [c](double t) {
    Vec acc = Vec::Zero(c->front().size());
    for (int p = static_cast<int>(c->size()) - 1; p >= 1; --p) acc = acc * t + p * (*c)[p];
    return acc;
  };
  return curve;
}

TestCurve random_polynomial_curve(int dimension, int degree, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::vector<Vec> coeffs;
  for (int p = 0; p <= degree; ++p) coeffs.push_back(random_vec(dimension, rng, scale));
  return polynomial_curve(std::move(coeffs));
}

AbstractReport abstract_inequality_margin(const Path& path, const TestCurve& v,
                                          const OdeProblem& problem) {
  const std::size_t n = path.t.size();
  if (n == 0) throw ContractViolation("abstract_inequality_margin: empty path");
  GronwallInput g;
  g.times = path.t;
  g.f.resize(n);
  g.chi.assign(n, 0.0);
  g.L.resize(n);
  g.M.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = path.t[j];
    const Vec vt = v.value(t);
    const Vec e = -v.derivative(t) + problem.rhs(t, vt);
    const Vec w = path.x[j] - vt;
    g.f[j] = w.squaredNorm();
    g.L[j] = 2.0 * problem.d_bound(t, vt);
    g.M[j] = 2.0 * e.dot(w);
  }
  AbstractReport report;
  report.times = g.times;
  report.lhs = g.f;
  g.f[0] = (problem.initial - v.value(path.t.front())).squaredNorm();
  report.rhs = gronwall_bound(g);
  report.margin.resize(n);
  report.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    report.margin[j] = report.rhs[j] - report.lhs[j];
    report.min_margin = std::min(report.min_margin, report.margin[j]);
  }
  return report;
}

DBound d_from_decomposition(const OdeProblem& problem, int samples, std::uint64_t seed) {
  if (!problem.decomposition) {
    throw ConfigError("ode problem " + problem.name + " has no linear + bilinear decomposition");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> time(0.0, problem.horizon);
  for (int s = 0; s < samples; ++s) {
    const double t = time(rng);
    const Vec x = random_vec(problem.dimension, rng, 2.0);
    const double ip = problem.rhs(t, x).dot(x);
    if (ip > 1e-12 * (1.0 + x.squaredNorm())) {
      throw ConfigError("ode problem " + problem.name + ": (F(t,x), x) > 0 at a sampled point");
    }
  }
  const auto c = problem.decomposition->c;
  return [c](double t, const Vec& y) { return 2.0 * c(t) * y.norm(); };
}

AprioriReport apriori_bound(const OdeProblem& problem, const Path& path) {
  const std::size_t n = path.t.size();
  GronwallInput g;
  g.times = path.t;
  g.f.assign(n, 0.0);
  g.chi.assign(n, 0.0);
  g.L.resize(n);
  g.M.resize(n);
  const Vec origin = Vec::Zero(problem.dimension);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = path.t[j];
    g.L[j] = 2.0 * (problem.d_bound(t, origin) + 0.25);
    g.M[j] = 2.0 * problem.rhs(t, origin).squaredNorm();
  }
  g.f[0] = problem.initial.squaredNorm();
  AprioriReport report;
  report.times = path.t;
  report.bound = gronwall_bound(g);
  report.norm_squared.resize(n);
  report.holds = true;
  for (std::size_t j = 0; j < n; ++j) {
    report.norm_squared[j] = path.x[j].squaredNorm();
    const double slack = 1e-12 * (1.0 + report.bound[j]);
    if (!(report.norm_squared[j] <= report.bound[j] + slack)) report.holds = false;
  }
  return report;
}

// ---- demos ----

namespace {

Eigen::Matrix2d rotation_generator() {
  Eigen::Matrix2d j;
  j << 0.0, -1.0, 1.0, 0.0;
  return j;
}

}  // namespace

OdeProblem linear_problem() {
  OdeProblem p;
  p.name = "linear";
  p.dimension = 2;
  p.rhs = [](double, const Vec& x) -> Vec { return -x; };
  p.decomposition = Decomposition{
      [](double) -> Eigen::MatrixXd { return -Eigen::MatrixXd::Identity(2, 2); },
      [](double, const Vec&, const Vec&) -> Vec { return Vec::Zero(2); },
      [](double) { return 0.0; }};
  p.d_bound = [](double, const Vec&) { return 0.0; };
  p.initial = Vec(2);
  p.initial << 1.0, -0.5;
  p.horizon = 2.0;
  return p;
}

OdeProblem rotation_problem(double beta) {
  OdeProblem p;
  p.name = "rotation";
  p.dimension = 2;
  const Eigen::Matrix2d j = rotation_generator();
  p.rhs = [j, beta](double, const Vec& x) -> Vec { return (1.0 + beta * x[0]) * (j * x); };
  // f(x, y) = β x₁ J y, so ‖f(x, y)‖ ≤ |β|‖x‖‖y‖.
  p.decomposition = Decomposition{
      [j](double) -> Eigen::MatrixXd { return j; },
      [j, beta](double, const Vec& x, const Vec& y) -> Vec { return beta * x[0] * (j * y); },
      [beta](double) { return std::abs(beta); }};
  p.d_bound = [beta](double, const Vec& y) { return 2.0 * std::abs(beta) * y.norm(); };
  p.initial = Vec(2);
  p.initial << 0.6, 0.3;
  p.horizon = 2.0;
  return p;
}

OdeProblem sgn_problem() {
  OdeProblem p;
  p.name = "sgn";
  p.dimension = 1;
  p.rhs = [](double, const Vec& x) -> Vec {
    Vec out(1);
    out[0] = x[0] > 0.0 ? -1.0 : (x[0] < 0.0 ? 1.0 : 0.0);
    return out;
  };
  p.d_bound = [](double, const Vec&) { return 0.0; };
  p.initial = Vec::Ones(1);
  p.horizon = 2.0;
  return p;
}

MollifiedFamily sgn_family() {
  MollifiedFamily f;
  f.epsilons = {1e-1, 1e-2, 1e-3};
  f.make = [](double eps) -> Rhs {
    return [eps](double, const Vec& x) -> Vec {
      Vec out(1);
      out[0] = -std::tanh(x[0] / eps);
      return out;
    };
  };
  return f;
}

OdeProblem affine_problem() {
  OdeProblem p;
  p.name = "affine";
  p.dimension = 1;
  p.rhs = [](double t, const Vec& x) -> Vec {
    Vec out(1);
    out[0] = -x[0] + std::sin(t);
    return out;
  };
  p.d_bound = [](double, const Vec&) { return 0.0; };
  p.initial = Vec::Ones(1);
  p.horizon = 5.0;
  return p;
}

OdeProblem demo_problem(const std::string& name) {
  if (name == "linear") return linear_problem();
  if (name == "rotation") return rotation_problem();
  if (name == "sgn") return sgn_problem();
  if (name == "affine") return affine_problem();
  throw ConfigError("unknown ode demo \"" + name + "\"; cases: linear rotation sgn affine");
}

}  // namespace malpha::ode
