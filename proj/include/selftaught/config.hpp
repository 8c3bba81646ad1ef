#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "selftaught/experiment.hpp"

namespace selftaught {

/// Parses a flat `key = value` document. Blank lines and lines starting
/// with '#' are ignored. Unspecified keys keep their defaults; the optional
/// `profile` key (full | desk) selects the base defaults and is applied
/// before any other key regardless of where it appears. Unknown keys,
/// repeated keys, malformed values and out-of-range values raise
/// ConfigError naming the key.
ExperimentConfig parse_config(std::string_view text);

/// Every key with its resolved value, one per line, in a fixed order.
/// parse_config(config_to_text(c)) == c.
std::string config_to_text(const ExperimentConfig& config);

/// Keys accepted by parse_config, in echo order (profile excluded).
const std::vector<std::string>& config_keys();

}  // namespace selftaught
