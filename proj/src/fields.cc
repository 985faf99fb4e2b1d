#include "malpha/fields.h"

#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <tuple>

#include "malpha/errors.h"

namespace malpha {

PhysicalParams::PhysicalParams(double eta, double lambda, double alpha)
    : eta_(eta), lambda_(lambda), alpha_(alpha) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw ConfigError("eta must be finite and >= 0");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be finite and > 0");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be finite and > 0");
  }
}

// ---- VelocityField ----

namespace {

void check_shape(const SpectralVector& c) {
  if (c.empty()) throw ContractViolation("VelocityField: no components");
  const Grid& grid = c.front().grid();
  if (static_cast<int>(c.size()) != grid.dim()) {
    throw ContractViolation("VelocityField: component count must equal dim");
  }
  for (const auto& x : c) {
    if (!(x.grid() == grid)) throw ContractViolation("VelocityField: mixed grids");
  }
}

}  // namespace

VelocityField::VelocityField(SpectralVector components, Trusted)
    : components_(std::move(components)) {}

VelocityField::VelocityField(SpectralVector components)
    : components_(std::move(components)) {
  check_shape(components_);
  const double scale = sobolev_norm(components_, SobolevIndex(1));
  const double div = max_divergence(components_);
  if (div > 1e-10 * scale) {
    throw ContractViolation("VelocityField: divergence " + std::to_string(div) +
                            " exceeds tolerance");
  }
  for (const auto& c : components_) {
    if (std::abs(mean(c)) > 1e-10 * scale) {
      throw ContractViolation("VelocityField: nonzero mean");
    }
  }
}

VelocityField VelocityField::zero(const Grid& grid) {
  return VelocityField(zero_vector(grid, grid.dim()), Trusted{});
}

VelocityField VelocityField::project(SpectralVector components) {
  check_shape(components);
  components = leray_project(std::move(components));
  for (auto& c : components) c[0] = Complex(0.0, 0.0);
  return VelocityField(std::move(components), Trusted{});
}

VelocityField VelocityField::from_physical(const std::vector<ScalarField>& components) {
  return VelocityField(to_spectral(components));
}

// ---- StressField ----

int StressField::index(int i, int j, int dim) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= dim) throw ContractViolation("StressField: index out of range");
  return i * dim - i * (i - 1) / 2 + (j - i);
}

StressField::StressField(const Grid& grid)
    : grid_(grid), upper_(entry_count(grid.dim()), SpectralField(grid)) {}

StressField::StressField(const Grid& grid, std::vector<SpectralField> upper)
    : grid_(grid), upper_(std::move(upper)) {
  if (static_cast<int>(upper_.size()) != entry_count(grid.dim())) {
    throw ContractViolation("StressField: wrong number of upper-triangle entries");
  }
  for (const auto& e : upper_) {
    if (!(e.grid() == grid)) throw ContractViolation("StressField: mixed grids");
  }
}

StressField& StressField::operator+=(const StressField& other) {
  for (std::size_t e = 0; e < upper_.size(); ++e) upper_[e] += other.upper_[e];
  return *this;
}

StressField& StressField::operator-=(const StressField& other) {
  for (std::size_t e = 0; e < upper_.size(); ++e) upper_[e] -= other.upper_[e];
  return *this;
}

StressField& StressField::operator*=(double c) {
  for (auto& e : upper_) e *= c;
  return *this;
}

StressField operator+(StressField a, const StressField& b) { return a += b; }
StressField operator-(StressField a, const StressField& b) { return a -= b; }
StressField operator*(double c, StressField a) { return a *= c; }

StressField StressField::from_physical(const Grid& grid,
                                       const std::vector<ScalarField>& upper) {
  std::vector<SpectralField> spec;
  for (const auto& e : upper) spec.push_back(to_spectral(e));
  return StressField(grid, std::move(spec));
}

StressField StressField::constant(const Grid& grid, const std::vector<double>& values) {
  StressField out(grid);
  if (static_cast<int>(values.size()) != entry_count(grid.dim())) {
    throw ContractViolation("StressField::constant: wrong number of entries");
  }
  const double n = static_cast<double>(grid.real_size());
  for (std::size_t e = 0; e < values.size(); ++e) out.upper_[e][0] = values[e] * n;
  return out;
}

StressField StressField::identity(const Grid& grid) {
  std::vector<double> values(entry_count(grid.dim()), 0.0);
  for (int i = 0; i < grid.dim(); ++i) values[index(i, i, grid.dim())] = 1.0;
  return constant(grid, values);
}

void dealias_in_place(StressField& field) {
  for (auto& e : field.upper()) dealias_in_place(e);
}

// ---- AntisymmetricField ----

AntisymmetricField::AntisymmetricField(const Grid& grid)
    : grid_(grid), upper_(entry_count(grid.dim()), SpectralField(grid)) {}

int AntisymmetricField::slot(int i, int j) const {
  const int d = dim();
  if (!(i < j) || i < 0 || j >= d) {
    throw ContractViolation("AntisymmetricField: need 0 <= i < j < dim");
  }
  // Strict upper triangle, row by row.
  return i * d - i * (i + 1) / 2 + (j - i - 1);
}

SpectralField& AntisymmetricField::upper(int i, int j) { return upper_[slot(i, j)]; }
const SpectralField& AntisymmetricField::upper(int i, int j) const {
  return upper_[slot(i, j)];
}

SpectralField AntisymmetricField::entry(int i, int j) const {
  if (i == j) return SpectralField(grid_);
  if (i < j) return upper_[slot(i, j)];
  return -1.0 * upper_[slot(j, i)];
}

// ---- kinematics ----

StressField strain(const SpectralVector& u) {
  const Grid& grid = u.front().grid();
  const int d = grid.dim();
  StressField out(grid);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      SpectralField e = derivative(u[i], j);
      e += derivative(u[j], i);
      e *= 0.5;
      out(i, j) = std::move(e);
    }
  }
  return out;
}

StressField strain(const VelocityField& u) { return strain(u.spectral()); }

AntisymmetricField vorticity(const SpectralVector& u) {
  const Grid& grid = u.front().grid();
  const int d = grid.dim();
  AntisymmetricField out(grid);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      SpectralField w = derivative(u[i], j);
      w -= derivative(u[j], i);
      w *= 0.5;
      out.upper(i, j) = std::move(w);
    }
  }
  return out;
}

AntisymmetricField vorticity(const VelocityField& u) { return vorticity(u.spectral()); }

StressField corotational_commutator(const StressField& sigma,
                                    const AntisymmetricField& w) {
  const Grid& grid = sigma.grid();
  if (!(w.grid() == grid)) throw ContractViolation("commutator: mixed grids");
  const int d = grid.dim();
  std::vector<ScalarField> s;
  for (const auto& e : sigma.upper()) s.push_back(to_physical(e));
  std::vector<ScalarField> wu;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) wu.push_back(to_physical(w.upper(i, j)));
  }
  auto S = [&](int i, int j, std::size_t p) { return s[StressField::index(i, j, d)][p]; };
  auto W = [&](int i, int j, std::size_t p) -> double {
    if (i == j) return 0.0;
    const int a = std::min(i, j);
    const int b = std::max(i, j);
    const double v = wu[a * d - a * (a + 1) / 2 + (b - a - 1)][p];
    return i < j ? v : -v;
  };
  StressField out(grid);
  const std::size_t size = grid.real_size();
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      ScalarField c(grid);
      for (std::size_t p = 0; p < size; ++p) {
        double acc = 0.0;
        for (int k = 0; k < d; ++k) acc += S(i, k, p) * W(k, j, p) - W(i, k, p) * S(k, j, p);
        c[p] = acc;
      }
      out(i, j) = dealias(to_spectral(c));
    }
  }
  return out;
}

SpectralVector divergence(const StressField& sigma) {
  const Grid& grid = sigma.grid();
  const int d = grid.dim();
  SpectralVector out = zero_vector(grid, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out[i] += derivative(sigma(i, j), j);
  }
  return out;
}

double stress_symbol_inner(const StressField& a, const StressField& b,
                           const std::vector<double>& symbol) {
  if (!(a.grid() == b.grid())) throw ContractViolation("stress_inner: mixed grids");
  const int d = a.dim();
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      const double w = i == j ? 1.0 : 2.0;
      sum += w * symbol_inner(a(i, j), b(i, j), symbol);
    }
  }
  return sum;
}

double stress_inner(const StressField& a, const StressField& b, SobolevIndex s) {
  return stress_symbol_inner(a, b, bessel_symbol(a.grid(), s.s));
}

double stress_norm(const StressField& a, SobolevIndex s) {
  return std::sqrt(std::max(0.0, stress_inner(a, a, s)));
}

const std::vector<double>& v_symbol(const Grid& grid, double alpha) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.try_emplace({grid.dim(), grid.n(), alpha});
  if (inserted) {
    const ModeTable& modes = mode_table(grid);
    it->second.resize(grid.spectral_size());
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      it->second[i] = 1.0 + alpha * alpha * modes.k2[i];
    }
  }
  return it->second;
}

double v_inner(const SpectralVector& u, const SpectralVector& w, double alpha) {
  return symbol_inner(u, w, v_symbol(u.front().grid(), alpha));
}

double v_norm_squared(const SpectralVector& u, double alpha) {
  return v_inner(u, u, alpha);
}

double energy(const SpectralVector& u, const StressField& sigma,
              const PhysicalParams& params) {
  return params.velocity_weight() * v_norm_squared(u, params.alpha()) +
         stress_inner(sigma, sigma, SobolevIndex(0));
}

double energy(const VelocityField& u, const StressField& sigma,
              const PhysicalParams& params) {
  return energy(u.spectral(), sigma, params);
}

// ---- random generators ----

VelocityField random_divfree(const Grid& grid, std::uint64_t seed,
                             double spectrum_decay) {
  if (!(spectrum_decay > 1.0)) {
    throw ContractViolation("random_divfree: spectrum_decay must exceed 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const ModeTable& modes = mode_table(grid);
  const int d = grid.dim();
  const double n = static_cast<double>(grid.real_size());
  SpectralVector u = zero_vector(grid, d);
  for (std::size_t i = 1; i < grid.spectral_size(); ++i) {
    std::array<Complex, 3> g{};
    for (int a = 0; a < d; ++a) g[a] = Complex(normal(rng), normal(rng));
    if (!modes.resolved[i]) continue;
    Complex kg(0.0, 0.0);
    for (int a = 0; a < d; ++a) kg += static_cast<double>(modes.k[i][a]) * g[a];
    double norm2 = 0.0;
    for (int a = 0; a < d; ++a) {
      g[a] -= static_cast<double>(modes.k[i][a]) * kg / modes.k2[i];
      norm2 += std::norm(g[a]);
    }
    if (norm2 == 0.0) continue;
    const double amp = n * std::pow(modes.k2[i], -0.5 * spectrum_decay) / std::sqrt(norm2);
    for (int a = 0; a < d; ++a) u[a][i] = amp * g[a];
  }
  for (auto& c : u) enforce_hermitian(c);
  return VelocityField::project(std::move(u));
}

StressField random_symmetric(const Grid& grid, std::uint64_t seed,
                             int max_wavenumber, double spectrum_decay) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const ModeTable& modes = mode_table(grid);
  const int band = std::min(max_wavenumber, grid.dealias_cutoff());
  const double n = static_cast<double>(grid.real_size());
  StressField out(grid);
  for (auto& e : out.upper()) {
    for (std::size_t i = 0; i < grid.spectral_size(); ++i) {
      const Complex g(normal(rng), normal(rng));
      bool inside = true;
      for (int a = 0; a < grid.dim(); ++a) inside = inside && std::abs(modes.k[i][a]) <= band;
      if (!inside) continue;
      e[i] = n * std::pow(1.0 + modes.k2[i], -0.5 * spectrum_decay) * g;
    }
    enforce_hermitian(e);
  }
  return out;
}

}  // namespace malpha
