#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pfc/sim_engine.hpp"

namespace pfc {

/// Parse/validation failure carrying the offending file and line.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string message, std::string origin = {}, int line = 0);

    const std::string& origin() const { return origin_; }
    int line() const { return line_; }

  private:
    std::string origin_;
    int line_ = 0;
};

/// Flat `key = value` map with dotted keys; insertion-ordered output comes
/// from the sorted key order.
using ConfigMap = std::map<std::string, std::string, std::less<>>;

/// Line-based `key = value` parser; '#' starts a comment; blank lines ignored.
ConfigMap parse_config_text(std::string_view text, std::string_view origin);
ConfigMap parse_config_file(const std::filesystem::path& path);

/// Applies one `dotted.path=value` override string onto the map.
void apply_override(ConfigMap& config, std::string_view assignment);

/// Builds a validated Scenario. Missing keys fall back to the standard
/// scenario defaults.
Scenario scenario_from_config(const ConfigMap& config);

/// Serializes a scenario back to a config map (round-trip form).
ConfigMap scenario_to_config(const Scenario& scenario);

/// Renders a map as the canonical config text.
std::string config_to_text(const ConfigMap& config);

/// Shortest decimal that parses back to exactly the same double.
std::string format_double(double value);

/// Strict double parser; throws ConfigError on trailing garbage.
double parse_double(std::string_view text, std::string_view key = {});

}  // namespace pfc
