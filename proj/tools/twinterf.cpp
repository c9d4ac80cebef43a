#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "twinterf/config.hpp"
#include "twinterf/errors.hpp"
#include "twinterf/scenarios.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitWindow = 3;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int run(const std::string& config_path, const std::vector<std::string>& overrides, std::string out_path,
        bool deterministic, bool swap_channels) {
  twinterf::KeyValues kv = twinterf::read_config_file(config_path);
  for (const auto& o : overrides) kv.push_back(twinterf::parse_override(o));
  const twinterf::ScenarioConfig config = twinterf::build_config(kv);
  if (out_path.empty()) out_path = config.output;

  const twinterf::PatternSeries result = twinterf::run_scenario(config, {swap_channels});

  std::ostringstream csv;
  csv << "# generator = twinterf " << twinterf::kVersion << '\n';
  if (!deterministic) csv << "# created = " << utc_timestamp() << '\n';
  for (const auto& [key, value] : twinterf::describe(config)) csv << "# " << key << " = " << value << '\n';
  twinterf::write_csv(csv, result);

  if (out_path.empty() || out_path == "-") {
    std::cout << csv.str();
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw twinterf::ConfigError("output", "cannot write '" + out_path + "'");
  file << csv.str();
  if (!file) throw twinterf::ConfigError("output", "write to '" + out_path + "' failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-path interferometer pattern generator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  bool deterministic = false;
  bool swap_channels = false;
  std::vector<std::string> overrides;

  auto* run_cmd = app.add_subcommand("run", "Run a scenario configuration and write CSV");
  run_cmd->add_option("config", config_path, "Configuration file (key = value lines)")->required();
  run_cmd->add_option("overrides", overrides, "key=value overrides");
  run_cmd->add_option("--out", out_path, "Output CSV path ('-' for stdout)");
  run_cmd->add_flag("--deterministic", deterministic, "Omit the timestamp line");
  run_cmd->add_flag("--swap-channels", swap_channels, "Exchange the U and L channel labels");

  auto* list_cmd = app.add_subcommand("list", "List the available scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (list_cmd->parsed()) {
    std::cout << twinterf::list_scenarios();
    return 0;
  }
  try {
    return run(config_path, overrides, out_path, deterministic, swap_channels);
  } catch (const twinterf::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const twinterf::WindowOverflow& e) {
    std::cerr << "window overflow: " << e.what() << '\n';
    return kExitWindow;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
