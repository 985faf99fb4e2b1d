#pragma once

#include <string>
#include <vector>

#include "malpha/abstract_ode.h"
#include "malpha/dissipative_check.h"
#include "malpha/solver.h"

namespace malpha {

// "%.17g": enough digits to round-trip every double, byte-stable.
std::string format_double(double v);

// Writes `content` to `path`; throws IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

// t,energy,dissipation
std::string energy_csv(const Trajectory& trajectory);
// t,energy,lhs,rhs,margin. `energy` may be empty (column left blank) and is
// otherwise aligned with report.times.
std::string report_csv(const DissipativeReport& report, const std::vector<double>& energy);
// Keys: t, lhs, rhs, margin, gamma_integral, gamma, min_margin, tolerance,
// scale, pass.
std::string report_json(const DissipativeReport& report);

std::string sweep_csv(const std::vector<SweepEntry>& entries);
std::string sweep_json(const std::vector<SweepEntry>& entries);

// t, x_0 .. x_{d-1}, norm_squared, apriori_bound[, reference]
std::string ode_csv(const ode::Path& path, const ode::AprioriReport& bound,
                    const std::vector<double>& reference = {});

}  // namespace malpha
