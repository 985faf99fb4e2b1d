#include "malpha/grid.h"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "malpha/errors.h"

namespace malpha {

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
  if (dim != 2 && dim != 3) {
    throw ConfigError("grid dim must be 2 or 3, got " + std::to_string(dim));
  }
  if (n < 8 || (n & (n - 1)) != 0) {
    throw ConfigError("grid n must be a power of two >= 8, got " +
                      std::to_string(n));
  }
}

std::size_t Grid::real_size() const {
  std::size_t size = 1;
  for (int d = 0; d < dim_; ++d) size *= static_cast<std::size_t>(n_);
  return size;
}

std::size_t Grid::spectral_size() const {
  return real_size() / static_cast<std::size_t>(n_) *
         static_cast<std::size_t>(last_extent());
}

double Grid::volume() const {
  double v = 1.0;
  for (int d = 0; d < dim_; ++d) v *= kTwoPi;
  return v;
}

double Grid::cell_volume() const {
  return volume() / static_cast<double>(real_size());
}

std::array<double, 3> Grid::point(std::size_t index) const {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const auto n = static_cast<std::size_t>(n_);
  for (int d = dim_ - 1; d >= 0; --d) {
    x[d] = spacing() * static_cast<double>(index % n);
    index /= n;
  }
  return x;
}

namespace {

std::unique_ptr<ModeTable> build_table(const Grid& grid) {
  auto table = std::make_unique<ModeTable>();
  const int n = grid.n();
  const int last = grid.last_extent();
  const int cutoff = grid.dealias_cutoff();
  const std::size_t size = grid.spectral_size();
  table->k.reserve(size);
  table->k2.reserve(size);
  table->weight.reserve(size);
  table->resolved.reserve(size);
  table->nyquist.reserve(size);

  auto push = [&](std::array<int, 3> k, int m) {
    double k2 = 0.0;
    bool keep = true;
    bool nyq = false;
    for (int d = 0; d < grid.dim(); ++d) {
      k2 += static_cast<double>(k[d]) * k[d];
      if (std::abs(k[d]) > cutoff) keep = false;
      if (std::abs(k[d]) == n / 2) nyq = true;
    }
    table->k.push_back(k);
    table->k2.push_back(k2);
    table->weight.push_back((m == 0 || m == n / 2) ? 1.0 : 2.0);
    table->resolved.push_back(keep ? 1 : 0);
    table->nyquist.push_back(nyq ? 1 : 0);
  };

  if (grid.dim() == 2) {
    for (int i = 0; i < n; ++i) {
      for (int m = 0; m < last; ++m) {
        push({signed_wavenumber(i, n), m, 0}, m);
      }
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int m = 0; m < last; ++m) {
          push({signed_wavenumber(i, n), signed_wavenumber(j, n), m}, m);
        }
      }
    }
  }
  return table;
}

}  // namespace

const ModeTable& mode_table(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<ModeTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{grid.dim(), grid.n()}];
  if (!slot) slot = build_table(grid);
  return *slot;
}

long spectral_index(const Grid& grid, const std::array<int, 3>& k) {
  const int n = grid.n();
  const int d = grid.dim();
  const int k_last = k[d - 1];
  if (k_last < 0 || k_last > n / 2) return -1;
  long index = 0;
  for (int axis = 0; axis < d - 1; ++axis) {
    if (k[axis] < -n / 2 || k[axis] >= n / 2) return -1;
    const int i = k[axis] >= 0 ? k[axis] : k[axis] + n;
    index = index * n + i;
  }
  return index * grid.last_extent() + k_last;
}

}  // namespace malpha
