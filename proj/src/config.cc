#include "malpha/config.h"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace malpha {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw ConfigError("config key \"" + key + "\": " + why);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) fail(prefix + it.key(), "unknown key");
  }
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

template <typename Int>
Int integer(const json& obj, const std::string& key, const std::string& path) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(path, "expected an integer");
  if constexpr (std::is_unsigned_v<Int>) {
    if (v.is_number_unsigned()) return v.get<Int>();
    if (v.get<long long>() < 0) fail(path, "must be nonnegative");
  }
  return v.get<Int>();
}

std::string text(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

}  // namespace

SimConfig parse_config_text(const std::string& source) {
  json doc;
  try {
    doc = json::parse(source);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(doc,
                 {"grid", "alpha", "eta", "lambda", "epsilon", "delta", "dt", "t_end",
                  "snapshot_stride", "initial_condition", "amplitude", "initial_stress",
                  "stress_amplitude", "stress_max_wavenumber", "spectrum_decay", "seed",
                  "scale_initial_data", "cfl_max"},
                 "");
  SimConfig c;
  if (!doc.contains("grid")) fail("grid", "missing");
  const json& grid = doc["grid"];
  if (!grid.is_object()) fail("grid", "expected an object");
  reject_unknown(grid, {"dim", "n"}, "grid.");
  if (!grid.contains("n")) fail("grid.n", "missing");
  c.n = integer<int>(grid, "n", "grid.n");
  if (grid.contains("dim")) c.dim = integer<int>(grid, "dim", "grid.dim");

  for (const char* key : {"alpha", "eta", "lambda", "dt", "t_end"}) {
    if (!doc.contains(key)) fail(key, "missing");
  }
  c.alpha = number(doc, "alpha", "alpha");
  c.eta = number(doc, "eta", "eta");
  c.lambda = number(doc, "lambda", "lambda");
  c.dt = number(doc, "dt", "dt");
  c.t_end = number(doc, "t_end", "t_end");
  if (doc.contains("epsilon")) c.epsilon = number(doc, "epsilon", "epsilon");
  if (doc.contains("delta")) c.delta = number(doc, "delta", "delta");
  if (doc.contains("snapshot_stride")) {
    c.snapshot_stride = integer<int>(doc, "snapshot_stride", "snapshot_stride");
  }
  if (doc.contains("initial_condition")) c.initial_condition = text(doc, "initial_condition");
  if (doc.contains("amplitude")) c.amplitude = number(doc, "amplitude", "amplitude");
  if (doc.contains("initial_stress")) c.initial_stress = text(doc, "initial_stress");
  if (doc.contains("stress_amplitude")) {
    c.stress_amplitude = number(doc, "stress_amplitude", "stress_amplitude");
  }
  if (doc.contains("stress_max_wavenumber")) {
    c.stress_max_wavenumber = integer<int>(doc, "stress_max_wavenumber", "stress_max_wavenumber");
  }
  if (doc.contains("spectrum_decay")) {
    c.spectrum_decay = number(doc, "spectrum_decay", "spectrum_decay");
  }
  if (doc.contains("seed")) c.seed = integer<std::uint64_t>(doc, "seed", "seed");
  if (doc.contains("scale_initial_data")) {
    if (!doc["scale_initial_data"].is_boolean()) fail("scale_initial_data", "expected true or false");
    c.scale_initial_data = doc["scale_initial_data"].get<bool>();
  }
  if (doc.contains("cfl_max")) c.cfl_max = number(doc, "cfl_max", "cfl_max");
  c.validate();
  return c;
}

SimConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string config_to_json(const SimConfig& c) {
  // nlohmann prints the shortest decimal that reads back to the same double.
  json doc = {
      {"grid", {{"dim", c.dim}, {"n", c.n}}},
      {"alpha", c.alpha},
      {"eta", c.eta},
      {"lambda", c.lambda},
      {"epsilon", c.epsilon},
      {"delta", c.delta},
      {"dt", c.dt},
      {"t_end", c.t_end},
      {"snapshot_stride", c.snapshot_stride},
      {"initial_condition", c.initial_condition},
      {"amplitude", c.amplitude},
      {"initial_stress", c.initial_stress},
      {"stress_amplitude", c.stress_amplitude},
      {"stress_max_wavenumber", c.stress_max_wavenumber},
      {"spectrum_decay", c.spectrum_decay},
      {"seed", c.seed},
      {"scale_initial_data", c.scale_initial_data},
      {"cfl_max", c.cfl_max},
  };
  return doc.dump(2);
}

}  // namespace malpha
