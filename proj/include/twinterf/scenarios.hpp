#pragma once

#include <string>
#include <vector>

#include "twinterf/config.hpp"
#include "twinterf/pattern.hpp"

namespace twinterf {

struct ScenarioInfo {
  Scenario id;
  std::string name;
  std::string summary;
  /// The formula the scenario reproduces.
  std::string reproduces;
  std::vector<Engine> engines;  // first entry is the default
};

const std::vector<ScenarioInfo>& scenario_catalog();
const ScenarioInfo& scenario_info(Scenario s);

struct RunOptions {
  /// Exchanges the U and L labels of single-channel columns.
  bool swap_channels = false;
};

/// Runs the configured sweep. Throws ConfigError for engine/parameter
/// combinations the scenario does not support and WindowOverflow when a
/// delayed pulse leaves an explicitly sized window.
PatternSeries run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Text printed by `twinterf list`.
std::string list_scenarios();

inline constexpr const char* kVersion = "1.0.0";

}  // namespace twinterf
