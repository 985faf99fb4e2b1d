#pragma once

#include <string>

#include "malpha/solver.h"

namespace malpha {

// Reads a JSON configuration. Required: grid.n, alpha, eta, lambda, dt,
// t_end. Unknown keys, wrong types and out-of-range values raise ConfigError
// naming the key.
SimConfig parse_config(const std::string& path);
SimConfig parse_config_text(const std::string& text);

// Effective configuration with every key present.
std::string config_to_json(const SimConfig& config);

}  // namespace malpha
