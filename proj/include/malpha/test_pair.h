#pragma once

#include <string>
#include <vector>

#include "malpha/fields.h"

namespace malpha {

// Smooth test trajectory (ζ(t), θ(t)): trigonometric polynomials in space
// whose coefficients are polynomials in s = (t − t_center)/t_scale.
// Time derivatives are exact.
class TestPair {
 public:
  // Identically zero pair on `grid`.
  static TestPair zero(const Grid& grid);
  // Time-independent pair.
  static TestPair constant(const VelocityField& zeta, const StressField& theta);
  // zeta[p], theta[p] multiply s^p. Velocity coefficients must be
  // band-limited, divergence-free and mean-free; they are re-projected to
  // remove roundoff.
  static TestPair from_coefficients(std::vector<SpectralVector> zeta,
                                    std::vector<StressField> theta,
                                    double t_center = 0.0, double t_scale = 1.0);
  // Least-squares polynomial fit of degree `degree` to snapshot data, with
  // time rescaled to [-1, 1] over the sampled interval.
  static TestPair fit(const std::vector<double>& times,
                      const std::vector<SpectralVector>& u,
                      const std::vector<StressField>& sigma, int degree);

  const Grid& grid() const { return grid_; }
  int degree() const { return static_cast<int>(zeta_.size()) - 1; }
  double t_center() const { return t_center_; }
  double t_scale() const { return t_scale_; }
  const std::vector<SpectralVector>& zeta_coefficients() const { return zeta_; }
  const std::vector<StressField>& theta_coefficients() const { return theta_; }

  SpectralVector zeta(double t) const;
  SpectralVector zeta_dot(double t) const;
  StressField theta(double t) const;
  StressField theta_dot(double t) const;
  bool theta_vanishes() const;

 private:
  TestPair(const Grid& grid, std::vector<SpectralVector> zeta,
           std::vector<StressField> theta, double t_center, double t_scale);

  Grid grid_;
  std::vector<SpectralVector> zeta_;
  std::vector<StressField> theta_;
  double t_center_;
  double t_scale_;
};

// JSON test-pair files. Each mode lists cosine and sine coefficient
// polynomials: the term is (Σ_p c_p s^p) cos(k·x) + (Σ_p d_p s^p) sin(k·x).
TestPair read_test_pair(const std::string& path);
TestPair test_pair_from_json(const std::string& text);
std::string test_pair_to_json(const TestPair& pair);

}  // namespace malpha
