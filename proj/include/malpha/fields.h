#pragma once

#include <cstdint>
#include <vector>

#include "malpha/spectral.h"

namespace malpha {

class PhysicalParams {
 public:
  // eta = 0 selects the Euler-α model.
  PhysicalParams(double eta, double lambda, double alpha);

  double eta() const { return eta_; }
  double lambda() const { return lambda_; }
  double alpha() const { return alpha_; }
  double mu() const { return eta_ / lambda_; }
  bool euler_alpha() const { return eta_ == 0.0; }
  // Weight of ‖u‖_V² in the energy: 2μ, or 1 in the Euler-α model where
  // the stress decouples and the velocity energy stands alone.
  double velocity_weight() const { return euler_alpha() ? 1.0 : 2.0 * mu(); }

 private:
  double eta_;
  double lambda_;
  double alpha_;
};

// Divergence-free, zero-mean velocity field held in spectral form.
class VelocityField {
 public:
  // Validates incompressibility and zero mean; throws ContractViolation.
  explicit VelocityField(SpectralVector components);

  static VelocityField zero(const Grid& grid);
  // Leray-projects and removes the mean. Never throws on valid shapes.
  static VelocityField project(SpectralVector components);
  static VelocityField from_physical(const std::vector<ScalarField>& components);

  const Grid& grid() const { return components_.front().grid(); }
  int dim() const { return static_cast<int>(components_.size()); }
  const SpectralVector& spectral() const { return components_; }
  const SpectralField& operator[](int i) const { return components_[i]; }
  std::vector<ScalarField> physical() const { return to_physical(components_); }

 private:
  struct Trusted {};
  VelocityField(SpectralVector components, Trusted);
  SpectralVector components_;
};

// Symmetric tensor field stored as its upper triangle, row by row:
// (0,0) (0,1) .. (0,d-1) (1,1) ..
class StressField {
 public:
  explicit StressField(const Grid& grid);
  StressField(const Grid& grid, std::vector<SpectralField> upper);

  static int entry_count(int dim) { return dim * (dim + 1) / 2; }
  static int index(int i, int j, int dim);

  const Grid& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }
  SpectralField& operator()(int i, int j) { return upper_[index(i, j, dim())]; }
  const SpectralField& operator()(int i, int j) const {
    return upper_[index(i, j, dim())];
  }
  std::vector<SpectralField>& upper() { return upper_; }
  const std::vector<SpectralField>& upper() const { return upper_; }

  StressField& operator+=(const StressField& other);
  StressField& operator-=(const StressField& other);
  StressField& operator*=(double c);

  static StressField from_physical(const Grid& grid,
                                   const std::vector<ScalarField>& upper);
  // Constant tensor field; `values` is the upper triangle.
  static StressField constant(const Grid& grid, const std::vector<double>& values);
  static StressField identity(const Grid& grid);

 private:
  Grid grid_;
  std::vector<SpectralField> upper_;
};

StressField operator+(StressField a, const StressField& b);
StressField operator-(StressField a, const StressField& b);
StressField operator*(double c, StressField a);

// Antisymmetric tensor field stored as its strict upper triangle.
class AntisymmetricField {
 public:
  explicit AntisymmetricField(const Grid& grid);

  static int entry_count(int dim) { return dim * (dim - 1) / 2; }
  const Grid& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }
  // Entry (i, j) for i < j; (j, i) is its negative and (i, i) is zero.
  SpectralField& upper(int i, int j);
  const SpectralField& upper(int i, int j) const;
  // Sign-aware entry accessor; returns a copy.
  SpectralField entry(int i, int j) const;

 private:
  int slot(int i, int j) const;
  Grid grid_;
  std::vector<SpectralField> upper_;
};

void dealias_in_place(StressField& field);

// E_ij = (∂_j u_i + ∂_i u_j)/2.
StressField strain(const SpectralVector& u);
StressField strain(const VelocityField& u);
// W_ij = (∂_j u_i − ∂_i u_j)/2.
AntisymmetricField vorticity(const SpectralVector& u);
AntisymmetricField vorticity(const VelocityField& u);
// σW − Wσ, evaluated pointwise and dealiased.
StressField corotational_commutator(const StressField& sigma,
                                    const AntisymmetricField& w);
// Σ_j ∂_j σ_ij.
SpectralVector divergence(const StressField& sigma);

// Frobenius inner product with the Bessel symbol of order s; off-diagonal
// entries count twice.
double stress_inner(const StressField& a, const StressField& b, SobolevIndex s);
double stress_norm(const StressField& a, SobolevIndex s);
double stress_symbol_inner(const StressField& a, const StressField& b,
                           const std::vector<double>& symbol);

// Symbol 1 + α²|k|², cached per grid and alpha.
const std::vector<double>& v_symbol(const Grid& grid, double alpha);
// (u, w)_V = (u, w) + α²(∇u, ∇w).
double v_inner(const SpectralVector& u, const SpectralVector& w, double alpha);
double v_norm_squared(const SpectralVector& u, double alpha);

// w_u‖u‖_V² + ‖σ‖² with w_u = params.velocity_weight().
double energy(const VelocityField& u, const StressField& sigma,
              const PhysicalParams& params);
double energy(const SpectralVector& u, const StressField& sigma,
              const PhysicalParams& params);

// Random divergence-free zero-mean field: every resolved mode k carries a
// random direction orthogonal to k with amplitude N^dim·|k|^(−decay).
VelocityField random_divfree(const Grid& grid, std::uint64_t seed,
                             double spectrum_decay);

// Random symmetric tensor field with modes |k_j| ≤ max_wavenumber (capped at
// the dealias cutoff), amplitude N^dim·(1+|k|²)^(−decay/2), mean included.
StressField random_symmetric(const Grid& grid, std::uint64_t seed,
                             int max_wavenumber, double spectrum_decay);

}  // namespace malpha
