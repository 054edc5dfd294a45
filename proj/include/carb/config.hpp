#pragma once

#include <string>
#include <vector>

#include "carb/experiments.hpp"

namespace carb {

struct ParsedConfig {
  RunConfig cfg;
  std::vector<std::string> defaulted_keys;  // keys absent from the file
};

// Flat key = value text, one pair per line, '#' comments. Unknown or
// duplicate keys are errors.
ParsedConfig parse_config_full(const std::string& text);
RunConfig parse_config(const std::string& text);

// Full effective configuration as parseable text (the manifest body).
std::string config_to_text(const RunConfig& cfg);

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);
double parse_double(const std::string& s);  // throws ConfigError

}  // namespace carb
