#pragma once

#include <complex>
#include <vector>

#include "malpha/grid.h"

namespace malpha {

using Complex = std::complex<double>;

// Real-space samples of a scalar field on a grid.
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid);
  ScalarField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const { return values_.size(); }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double c);

  double max_abs() const;
  bool finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double c, ScalarField a);
// Pointwise product.
ScalarField operator*(const ScalarField& a, const ScalarField& b);

// Half-spectrum Fourier coefficients of a real field.
//
// Convention: forward transform is unnormalized, so a constant c has zero
// mode c·N^dim; the inverse divides by N^dim.
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);
  SpectralField(const Grid& grid, std::vector<Complex> coeffs);

  const Grid& grid() const { return grid_; }
  std::vector<Complex>& coeffs() { return coeffs_; }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  Complex& operator[](std::size_t i) { return coeffs_[i]; }
  const Complex& operator[](std::size_t i) const { return coeffs_[i]; }
  std::size_t size() const { return coeffs_.size(); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double c);
  SpectralField& operator*=(Complex c);
  // a += c·x without temporaries.
  SpectralField& add_scaled(double c, const SpectralField& x);

  bool finite() const;

 private:
  Grid grid_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double c, SpectralField a);

enum class Direction { kForward, kInverse };

SpectralField to_spectral(const ScalarField& field);
ScalarField to_physical(const SpectralField& field);

// Derivative along `axis`: mode k is multiplied by i·k_axis. The Nyquist
// coefficient along that axis is dropped.
SpectralField derivative(const SpectralField& field, int axis);
ScalarField derivative(const ScalarField& field, int axis);

// Zero every mode with some |k_j| above the 2/3 cutoff.
void dealias_in_place(SpectralField& field);
SpectralField dealias(SpectralField field);
ScalarField dealias(const ScalarField& field);

// Per-mode multiplication by (1 + α²|k|²) or its reciprocal.
SpectralField helmholtz_apply(SpectralField field, double alpha);
SpectralField helmholtz_invert(SpectralField field, double alpha);

struct SobolevIndex {
  explicit SobolevIndex(double order);
  double s;
};

// (f, g)_s with the Bessel symbol (1 + |k|²)^s. For s = 0 this equals the
// integral of f·g over the torus.
double sobolev_inner(const SpectralField& f, const SpectralField& g,
                     SobolevIndex s);
double sobolev_inner(const ScalarField& f, const ScalarField& g,
                     SobolevIndex s);
double sobolev_norm(const SpectralField& f, SobolevIndex s);

// Weighted spectral inner product Σ w(k) Re(f̂ ĝ*) with the same normalization
// as sobolev_inner. `symbol` is indexed like the coefficient array.
double symbol_inner(const SpectralField& f, const SpectralField& g,
                    const std::vector<double>& symbol);

// Midpoint-rule quadrature of ∫ f·g, exact for band-limited products.
double l2_inner(const ScalarField& f, const ScalarField& g);

// Pseudo-spectral product, dealiased. With 2/3-rule inputs the resolved
// modes of the result are exact.
SpectralField dealiased_product(const SpectralField& a, const SpectralField& b);

// Zero mode, with the N^dim normalization removed.
double mean(const SpectralField& field);

// Impose conjugate symmetry on the planes where both k and −k are stored
// (k_last = 0 and k_last = N/2). Of each pair the coefficient stored first
// is kept; self-conjugate modes become real.
void enforce_hermitian(SpectralField& field);

using SpectralVector = std::vector<SpectralField>;

SpectralVector zero_vector(const Grid& grid, int components);
SpectralVector gradient(const SpectralField& field);
SpectralField divergence(const SpectralVector& field);
// û − k(k·û)/|k|²; the zero mode is left untouched.
SpectralVector leray_project(SpectralVector field);
SpectralVector to_spectral(const std::vector<ScalarField>& field);
std::vector<ScalarField> to_physical(const SpectralVector& field);
SpectralVector helmholtz_apply(SpectralVector field, double alpha);
SpectralVector helmholtz_invert(SpectralVector field, double alpha);
void dealias_in_place(SpectralVector& field);
double sobolev_inner(const SpectralVector& f, const SpectralVector& g,
                     SobolevIndex s);
double sobolev_norm(const SpectralVector& f, SobolevIndex s);
double symbol_inner(const SpectralVector& f, const SpectralVector& g,
                    const std::vector<double>& symbol);
// Largest |divergence| in real space.
double max_divergence(const SpectralVector& field);

SpectralVector& operator+=(SpectralVector& a, const SpectralVector& b);
SpectralVector& operator-=(SpectralVector& a, const SpectralVector& b);
SpectralVector& operator*=(SpectralVector& a, double c);
SpectralVector operator+(SpectralVector a, const SpectralVector& b);
SpectralVector operator-(SpectralVector a, const SpectralVector& b);
SpectralVector operator*(double c, SpectralVector a);

// Symbol (1 + |k|²)^s per stored mode, cached.
const std::vector<double>& bessel_symbol(const Grid& grid, double s);

}  // namespace malpha
