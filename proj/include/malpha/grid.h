#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace malpha {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform periodic grid on [0, 2π)^dim with n points per axis.
//
// Real-space samples are stored row-major with the last axis fastest.
// Spectral coefficients use the real-to-complex half layout: the last
// axis keeps wavenumbers 0..n/2, the others run over all n indices.
class Grid {
 public:
  Grid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double length() const { return kTwoPi; }
  double spacing() const { return kTwoPi / n_; }
  // Largest |k_j| that survives the 2/3 rule.
  int dealias_cutoff() const { return n_ / 3; }
  int last_extent() const { return n_ / 2 + 1; }
  std::size_t real_size() const;
  std::size_t spectral_size() const;
  double volume() const;
  double cell_volume() const;
  // Coordinates of real-space sample `index` (unused axes are zero).
  std::array<double, 3> point(std::size_t index) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int dim_;
  int n_;
};

// Wavenumber data for every stored spectral coefficient of a grid.
struct ModeTable {
  std::vector<std::array<int, 3>> k;
  std::vector<double> k2;
  // Parseval multiplicity: 2 where the conjugate partner is not stored.
  std::vector<double> weight;
  // 1 if the mode survives dealiasing.
  std::vector<unsigned char> resolved;
  // 1 if some component sits on the Nyquist wavenumber n/2.
  std::vector<unsigned char> nyquist;
};

// Shared, immutable, built once per (dim, n). Thread-safe.
const ModeTable& mode_table(const Grid& grid);

// Signed wavenumber for a full-length axis index: 0..n/2-1, then -n/2..-1.
inline int signed_wavenumber(int index, int n) {
  return index < n / 2 ? index : index - n;
}

// Storage index of wavevector k in the half layout, or -1 if k lies in the
// unstored half (k_last < 0) or outside the grid.
long spectral_index(const Grid& grid, const std::array<int, 3>& k);

}  // namespace malpha
