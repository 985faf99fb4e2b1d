#include "malpha/report.h"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "malpha/errors.h"

namespace malpha {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("failed writing " + path);
}

std::string energy_csv(const Trajectory& trajectory) {
  std::ostringstream out;
  out << "t,energy,dissipation\n";
  for (const auto& r : trajectory.energy) {
    out << format_double(r.t) << ',' << format_double(r.energy) << ','
        << format_double(r.dissipation) << '\n';
  }
  return out.str();
}

std::string report_csv(const DissipativeReport& report, const std::vector<double>& energy) {
  std::ostringstream out;
  out << "t,energy,lhs,rhs,margin\n";
  for (std::size_t j = 0; j < report.times.size(); ++j) {
    out << format_double(report.times[j]) << ',';
    if (j < energy.size()) out << format_double(energy[j]);
    out << ',' << format_double(report.lhs[j]) << ',' << format_double(report.rhs[j]) << ','
        << format_double(report.margin[j]) << '\n';
  }
  return out.str();
}

std::string report_json(const DissipativeReport& report) {
  json doc = {
      {"t", report.times},
      {"lhs", report.lhs},
      {"rhs", report.rhs},
      {"margin", report.margin},
      {"gamma_integral", report.gamma_integral},
      {"gamma", report.gamma_used},
      {"min_margin", report.min_margin},
      {"tolerance", report.tolerance},
      {"scale", report.scale},
      {"pass", report.pass},
  };
  return doc.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepEntry>& entries) {
  std::ostringstream out;
  out << "alpha,t,l2_norm,l2_cap\n";
  for (const auto& e : entries) {
    for (std::size_t j = 0; j < e.times.size(); ++j) {
      out << format_double(e.alpha) << ',' << format_double(e.times[j]) << ','
          << format_double(e.l2_norms[j]) << ',' << format_double(e.l2_cap) << '\n';
    }
  }
  return out.str();
}

std::string sweep_json(const std::vector<SweepEntry>& entries) {
  json runs = json::array();
  bool all_ok = true;
  for (const auto& e : entries) {
    json run = {
        {"alpha", e.alpha},
        {"completed", e.completed},
        {"e0", e.e0},
        {"sup_energy", e.sup_energy},
        {"bound_ok", e.bound_ok},
        {"l2_cap", e.l2_cap},
    };
    if (!e.completed) run["error"] = e.error;
    all_ok = all_ok && e.completed && e.bound_ok;
    runs.push_back(run);
  }
  json doc = {{"runs", runs}, {"pass", all_ok}};
  return doc.dump(2) + "\n";
}

std::string ode_csv(const ode::Path& path, const ode::AprioriReport& bound,
                    const std::vector<double>& reference) {
  std::ostringstream out;
  out << 't';
  const long dim = path.x.empty() ? 0 : path.x.front().size();
  for (long i = 0; i < dim; ++i) out << ",x" << i;
  out << ",norm_squared,apriori_bound";
  if (!reference.empty()) out << ",reference";
  out << '\n';
  for (std::size_t j = 0; j < path.t.size(); ++j) {
    out << format_double(path.t[j]);
    for (long i = 0; i < dim; ++i) out << ',' << format_double(path.x[j][i]);
    out << ',' << format_double(bound.norm_squared[j]) << ',' << format_double(bound.bound[j]);
    if (!reference.empty()) out << ',' << format_double(reference[j]);
    out << '\n';
  }
  return out.str();
}

}  // namespace malpha
