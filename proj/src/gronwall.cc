#include "malpha/gronwall.h"

#include <cmath>
#include <string>

#include "malpha/errors.h"

namespace malpha {

namespace {

void validate(const GronwallInput& in) {
  const std::size_t n = in.times.size();
  if (n == 0) throw ContractViolation("gronwall: no samples");
  if (in.f.size() != n || in.chi.size() != n || in.L.size() != n || in.M.size() != n) {
    throw ContractViolation("gronwall: series lengths differ");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0 && !(in.times[j] > in.times[j - 1])) {
      throw ContractViolation("gronwall: times must be strictly increasing");
    }
    if (!(in.chi[j] >= 0.0)) {
      throw ContractViolation("gronwall: chi must be nonnegative (sample " + std::to_string(j) + ")");
    }
    if (!(in.L[j] >= 0.0)) {
      throw ContractViolation("gronwall: L must be nonnegative (sample " + std::to_string(j) + ")");
    }
  }
}

}  // namespace

std::vector<double> cumulative_trapezoid(const std::vector<double>& times,
                                         const std::vector<double>& values) {
  std::vector<double> out(times.size(), 0.0);
  for (std::size_t j = 1; j < times.size(); ++j) {
    out[j] = out[j - 1] + 0.5 * (times[j] - times[j - 1]) * (values[j - 1] + values[j]);
  }
  return out;
}

std::vector<double> gronwall_bound(const GronwallInput& input) {
  validate(input);
  const std::size_t n = input.times.size();
  std::vector<double> bound(n);
  bound[0] = input.f[0];
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double h = input.times[j + 1] - input.times[j];
    const double growth = std::exp(0.5 * h * (input.L[j] + input.L[j + 1]));
    bound[j + 1] = growth * bound[j] + 0.5 * h * (growth * input.M[j] + input.M[j + 1]);
  }
  return bound;
}

std::vector<double> gronwall_lhs(const GronwallInput& input) {
  validate(input);
  std::vector<double> out = cumulative_trapezoid(input.times, input.chi);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += input.f[j];
  return out;
}

}  // namespace malpha
