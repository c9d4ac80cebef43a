#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twinterf {

/// Validation failure tied to one configuration key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Scenario {
  single_photon,
  hom,
  two_photon_mz,
  two_delay,
  n_photon,
  chirped,
  orthogonal,
  ensemble_hom,
  ensemble_mz,
  homodyne
};

enum class Engine { analytic, envelope, spectral };

/// Typed run configuration. Lengths are in the same units as xi0; wave
/// numbers k0 and lambda are given as the products k0*xi0 and lambda*xi0.
struct ScenarioConfig {
  Scenario scenario = Scenario::single_photon;
  std::optional<Engine> engine;  // scenario default when unset
  double xi0 = 1.0;
  std::optional<double> k0_xi0;  // 10, or 40 for the ensemble scenarios
  double kappa = 0.0;
  double lambda_xi0 = 1.0;
  double eta = 0.0;
  std::optional<double> sweep_start, sweep_stop, sweep_step;
  double zeta = 1.5707963267948966;
  std::optional<double> dxi2;
  int n = 2;
  int sign = 1;
  std::string response = "number_resolving";
  std::uint64_t seed = 1;
  std::size_t n_events = 5000;
  double phase_correlation_k = 0.0;
  std::size_t grid_size = 0;     // 0 = automatic
  double grid_half_width = 0.0;  // in units of xi0, 0 = automatic
  std::string state = "coherent";
  double c_abs = 1.0;
  double c_arg = 0.0;
  double alpha_abs = 1.0;
  double alpha_arg = 0.0;
  int n_max = 20;
  int fock_n = 1;
  std::string output;

  double k0_times_xi0() const;
  double k0() const { return k0_times_xi0() / xi0; }
};

/// Raw key/value pairs in file order; later assignments win.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
KeyValues parse_key_values(const std::string& text, const std::string& origin);
KeyValues read_config_file(const std::string& path);
/// Parses one "key=value" command-line override.
std::pair<std::string, std::string> parse_override(const std::string& arg);

/// Converts and validates; unknown keys and bad values raise ConfigError.
ScenarioConfig build_config(const KeyValues& kv);

/// Every recognised key with its current value, for the CSV preamble.
std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& c);

std::string to_string(Scenario s);
std::string to_string(Engine e);
std::optional<Scenario> scenario_from_string(const std::string& s);

}  // namespace twinterf
