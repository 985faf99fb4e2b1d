#include "malpha/spectral.h"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "malpha/errors.h"

namespace malpha {

namespace {

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (!(a == b)) {
    throw ContractViolation(std::string(what) + ": fields live on different grids");
  }
}

// FFTW's planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Plan {
  fftw_plan plan = nullptr;
  double* real = nullptr;
  fftw_complex* spec = nullptr;

  Plan(const Grid& grid, Direction dir) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    real = fftw_alloc_real(grid.real_size());
    spec = fftw_alloc_complex(grid.spectral_size());
    const int n = grid.n();
    const unsigned flags = FFTW_ESTIMATE;
    if (grid.dim() == 2) {
      plan = dir == Direction::kForward
                 ? fftw_plan_dft_r2c_2d(n, n, real, spec, flags)
                 : fftw_plan_dft_c2r_2d(n, n, spec, real, flags);
    } else {
      plan = dir == Direction::kForward
                 ? fftw_plan_dft_r2c_3d(n, n, n, real, spec, flags)
                 : fftw_plan_dft_c2r_3d(n, n, n, spec, real, flags);
    }
  }
  ~Plan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
    fftw_free(real);
    fftw_free(spec);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
};

// One plan (with its scratch buffers) per thread, grid and direction.
Plan& plan_for(const Grid& grid, Direction dir) {
  thread_local std::map<std::tuple<int, int, int>, std::unique_ptr<Plan>> cache;
  auto& slot = cache[{grid.dim(), grid.n(), static_cast<int>(dir)}];
  if (!slot) slot = std::make_unique<Plan>(grid, dir);
  return *slot;
}

double spectral_scale(const Grid& grid) {
  const double n = static_cast<double>(grid.real_size());
  return grid.volume() / (n * n);
}

}  // namespace

// ---- ScalarField ----

ScalarField::ScalarField(const Grid& grid)
    : grid_(grid), values_(grid.real_size(), 0.0) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.real_size()) {
    throw ContractViolation("ScalarField: value count does not match grid");
  }
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField +=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  require_same_grid(grid_, other.grid_, "ScalarField -=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double c) {
  for (double& v : values_) v *= c;
  return *this;
}

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::finite() const {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double c, ScalarField a) { return a *= c; }

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "pointwise product");
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

// ---- SpectralField ----

SpectralField::SpectralField(const Grid& grid)
    : grid_(grid), coeffs_(grid.spectral_size(), Complex(0.0, 0.0)) {}

SpectralField::SpectralField(const Grid& grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.spectral_size()) {
    throw ContractViolation("SpectralField: coefficient count does not match grid");
  }
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(grid_, other.grid_, "SpectralField -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (Complex& v : coeffs_) v *= c;
  return *this;
}

SpectralField& SpectralField::operator*=(Complex c) {
  for (Complex& v : coeffs_) v *= c;
  return *this;
}

SpectralField& SpectralField::add_scaled(double c, const SpectralField& x) {
  require_same_grid(grid_, x.grid_, "SpectralField add_scaled");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += c * x.coeffs_[i];
  return *this;
}

bool SpectralField::finite() const {
  for (const Complex& v : coeffs_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double c, SpectralField a) { return a *= c; }

// ---- transforms ----

SpectralField to_spectral(const ScalarField& field) {
  const Grid& grid = field.grid();
  Plan& p = plan_for(grid, Direction::kForward);
  std::memcpy(p.real, field.values().data(), grid.real_size() * sizeof(double));
  fftw_execute(p.plan);
  SpectralField out(grid);
  std::memcpy(static_cast<void*>(out.coeffs().data()), p.spec,
              grid.spectral_size() * sizeof(fftw_complex));
  return out;
}

ScalarField to_physical(const SpectralField& field) {
  const Grid& grid = field.grid();
  Plan& p = plan_for(grid, Direction::kInverse);
  std::memcpy(p.spec, field.coeffs().data(),
              grid.spectral_size() * sizeof(fftw_complex));
  fftw_execute(p.plan);
  ScalarField out(grid);
  const double inv = 1.0 / static_cast<double>(grid.real_size());
  for (std::size_t i = 0; i < grid.real_size(); ++i) out[i] = p.real[i] * inv;
  return out;
}

SpectralField derivative(const SpectralField& field, int axis) {
  const Grid& grid = field.grid();
  if (axis < 0 || axis >= grid.dim()) {
    throw ContractViolation("derivative: axis " + std::to_string(axis) +
                            " out of range");
  }
  const ModeTable& modes = mode_table(grid);
  const int nyquist = grid.n() / 2;
  SpectralField out(grid);
  for (std::size_t i = 0; i < field.size(); ++i) {
    const int k = modes.k[i][axis];
    if (std::abs(k) == nyquist) continue;
    out[i] = Complex(0.0, static_cast<double>(k)) * field[i];
  }
  return out;
}

ScalarField derivative(const ScalarField& field, int axis) {
  return to_physical(derivative(to_spectral(field), axis));
}

void dealias_in_place(SpectralField& field) {
  const ModeTable& modes = mode_table(field.grid());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (!modes.resolved[i]) field[i] = Complex(0.0, 0.0);
  }
}

SpectralField dealias(SpectralField field) {
  dealias_in_place(field);
  return field;
}

ScalarField dealias(const ScalarField& field) {
  return to_physical(dealias(to_spectral(field)));
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ConfigError("alpha must be positive and finite, got " +
                      std::to_string(alpha));
  }
}

}  // namespace

SpectralField helmholtz_apply(SpectralField field, double alpha) {
  check_alpha(alpha);
  const ModeTable& modes = mode_table(field.grid());
  const double a2 = alpha * alpha;
  for (std::size_t i = 0; i < field.size(); ++i) field[i] *= 1.0 + a2 * modes.k2[i];
  return field;
}

SpectralField helmholtz_invert(SpectralField field, double alpha) {
  check_alpha(alpha);
  const ModeTable& modes = mode_table(field.grid());
  const double a2 = alpha * alpha;
  for (std::size_t i = 0; i < field.size(); ++i) field[i] /= 1.0 + a2 * modes.k2[i];
  return field;
}

SobolevIndex::SobolevIndex(double order) : s(order) {
  if (!(order >= 0.0) || !std::isfinite(order)) {
    throw ContractViolation("Sobolev index must be a finite nonnegative number");
  }
}

const std::vector<double>& bessel_symbol(const Grid& grid, double s) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto [it, inserted] = cache.try_emplace({grid.dim(), grid.n(), s});
  if (inserted) {
    const ModeTable& modes = mode_table(grid);
    it->second.resize(grid.spectral_size());
    for (std::size_t i = 0; i < it->second.size(); ++i) {
      it->second[i] = std::pow(1.0 + modes.k2[i], s);
    }
  }
  return it->second;
}

double symbol_inner(const SpectralField& f, const SpectralField& g,
                    const std::vector<double>& symbol) {
  require_same_grid(f.grid(), g.grid(), "inner product");
  const ModeTable& modes = mode_table(f.grid());
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double re = f[i].real() * g[i].real() + f[i].imag() * g[i].imag();
    sum += modes.weight[i] * symbol[i] * re;
  }
  return sum * spectral_scale(f.grid());
}

double sobolev_inner(const SpectralField& f, const SpectralField& g,
                     SobolevIndex s) {
  return symbol_inner(f, g, bessel_symbol(f.grid(), s.s));
}

double sobolev_inner(const ScalarField& f, const ScalarField& g, SobolevIndex s) {
  require_same_grid(f.grid(), g.grid(), "sobolev_inner");
  return sobolev_inner(to_spectral(f), to_spectral(g), s);
}

double sobolev_norm(const SpectralField& f, SobolevIndex s) {
  return std::sqrt(std::max(0.0, sobolev_inner(f, f, s)));
}

double l2_inner(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid(), g.grid(), "l2_inner");
  double sum = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g[i];
  return sum * f.grid().cell_volume();
}

SpectralField dealiased_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid(), "dealiased_product");
  return dealias(to_spectral(to_physical(a) * to_physical(b)));
}

double mean(const SpectralField& field) {
  return field[0].real() / static_cast<double>(field.grid().real_size());
}

void enforce_hermitian(SpectralField& field) {
  const Grid& grid = field.grid();
  const int n = grid.n();
  const int last = grid.last_extent();
  const std::size_t rows = grid.spectral_size() / last;
  for (int m : {0, n / 2}) {
    for (std::size_t r = 0; r < rows; ++r) {
      // Row index encodes the non-last axes; negate each of them mod n.
      std::size_t rest = r;
      std::size_t partner = 0;
      std::size_t stride = 1;
      for (int axis = 0; axis < grid.dim() - 1; ++axis) {
        const std::size_t i = rest % n;
        rest /= n;
        partner += ((n - i) % n) * stride;
        stride *= n;
      }
      const std::size_t self = r * last + m;
      const std::size_t other = partner * last + m;
      if (other == self) {
        field[self] = Complex(field[self].real(), 0.0);
      } else if (other > self) {
        field[other] = std::conj(field[self]);
      }
    }
  }
}

// ---- vector fields ----

SpectralVector zero_vector(const Grid& grid, int components) {
  return SpectralVector(components, SpectralField(grid));
}

SpectralVector gradient(const SpectralField& field) {
  SpectralVector out;
  for (int axis = 0; axis < field.grid().dim(); ++axis) {
    out.push_back(derivative(field, axis));
  }
  return out;
}

namespace {

const Grid& vector_grid(const SpectralVector& field, const char* what) {
  if (field.empty()) throw ContractViolation(std::string(what) + ": empty vector field");
  const Grid& grid = field.front().grid();
  if (static_cast<int>(field.size()) != grid.dim()) {
    throw ContractViolation(std::string(what) + ": component count must equal dim");
  }
  for (const auto& c : field) require_same_grid(grid, c.grid(), what);
  return grid;
}

}  // namespace

SpectralField divergence(const SpectralVector& field) {
  const Grid& grid = vector_grid(field, "divergence");
  SpectralField out(grid);
  for (int axis = 0; axis < grid.dim(); ++axis) out += derivative(field[axis], axis);
  return out;
}

SpectralVector leray_project(SpectralVector field) {
  const Grid& grid = vector_grid(field, "leray_project");
  const ModeTable& modes = mode_table(grid);
  const int d = grid.dim();
  for (std::size_t i = 1; i < grid.spectral_size(); ++i) {
    Complex kdotu(0.0, 0.0);
    for (int a = 0; a < d; ++a) kdotu += static_cast<double>(modes.k[i][a]) * field[a][i];
    const Complex c = kdotu / modes.k2[i];
    for (int a = 0; a < d; ++a) field[a][i] -= static_cast<double>(modes.k[i][a]) * c;
  }
  return field;
}

SpectralVector to_spectral(const std::vector<ScalarField>& field) {
  SpectralVector out;
  out.reserve(field.size());
  for (const auto& c : field) out.push_back(to_spectral(c));
  return out;
}

std::vector<ScalarField> to_physical(const SpectralVector& field) {
  std::vector<ScalarField> out;
  out.reserve(field.size());
  for (const auto& c : field) out.push_back(to_physical(c));
  return out;
}

SpectralVector helmholtz_apply(SpectralVector field, double alpha) {
  for (auto& c : field) c = helmholtz_apply(std::move(c), alpha);
  return field;
}

SpectralVector helmholtz_invert(SpectralVector field, double alpha) {
  for (auto& c : field) c = helmholtz_invert(std::move(c), alpha);
  return field;
}

void dealias_in_place(SpectralVector& field) {
  for (auto& c : field) dealias_in_place(c);
}

double symbol_inner(const SpectralVector& f, const SpectralVector& g,
                    const std::vector<double>& symbol) {
  if (f.size() != g.size()) throw ContractViolation("inner product: component count mismatch");
  double sum = 0.0;
  for (std::size_t c = 0; c < f.size(); ++c) sum += symbol_inner(f[c], g[c], symbol);
  return sum;
}

double sobolev_inner(const SpectralVector& f, const SpectralVector& g,
                     SobolevIndex s) {
  if (f.empty()) return 0.0;
  return symbol_inner(f, g, bessel_symbol(f.front().grid(), s.s));
}

double sobolev_norm(const SpectralVector& f, SobolevIndex s) {
  return std::sqrt(std::max(0.0, sobolev_inner(f, f, s)));
}

double max_divergence(const SpectralVector& field) {
  return to_physical(divergence(field)).max_abs();
}

SpectralVector& operator+=(SpectralVector& a, const SpectralVector& b) {
  if (a.size() != b.size()) throw ContractViolation("vector +=: component count mismatch");
  for (std::size_t c = 0; c < a.size(); ++c) a[c] += b[c];
  return a;
}

SpectralVector& operator-=(SpectralVector& a, const SpectralVector& b) {
  if (a.size() != b.size()) throw ContractViolation("vector -=: component count mismatch");
  for (std::size_t c = 0; c < a.size(); ++c) a[c] -= b[c];
  return a;
}

SpectralVector& operator*=(SpectralVector& a, double c) {
  for (auto& x : a) x *= c;
  return a;
}

SpectralVector operator+(SpectralVector a, const SpectralVector& b) { return a += b; }
SpectralVector operator-(SpectralVector a, const SpectralVector& b) { return a -= b; }
SpectralVector operator*(double c, SpectralVector a) { return a *= c; }

}  // namespace malpha
