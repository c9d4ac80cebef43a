#include "twinterf/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "twinterf/pattern.hpp"

namespace twinterf {
namespace {

constexpr std::array<std::pair<Scenario, const char*>, 10> kScenarioNames{{
    {Scenario::single_photon, "single_photon"},
    {Scenario::hom, "hom"},
    {Scenario::two_photon_mz, "two_photon_mz"},
    {Scenario::two_delay, "two_delay"},
    {Scenario::n_photon, "n_photon"},
    {Scenario::chirped, "chirped"},
    {Scenario::orthogonal, "orthogonal"},
    {Scenario::ensemble_hom, "ensemble_hom"},
    {Scenario::ensemble_mz, "ensemble_mz"},
    {Scenario::homodyne, "homodyne"},
}};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  in.imbue(std::locale::classic());
  double x = 0.0;
  in >> x;
  if (in.fail() || !in.eof() || !std::isfinite(x)) throw ConfigError(key, "expected a finite number, got '" + v + "'");
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key, "expected an integer, got '" + v + "'");
  return x;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc{} || ptr != end) throw ConfigError(key, "expected a non-negative integer, got '" + v + "'");
  return x;
}

using Setter = std::function<void(ScenarioConfig&, const std::string& key, const std::string& value)>;

Setter real(double ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& k, const std::string& v) { c.*field = to_double(k, v); };
}

Setter optional_real(std::optional<double> ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& k, const std::string& v) { c.*field = to_double(k, v); };
}

Setter integer(int ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string& k, const std::string& v) {
    const long long x = to_integer(k, v);
    if (x < -1000000 || x > 1000000) throw ConfigError(k, "value out of range");
    c.*field = static_cast<int>(x);
  };
}

Setter text(std::string ScenarioConfig::*field) {
  return [field](ScenarioConfig& c, const std::string&, const std::string& v) { c.*field = v; };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"scenario",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         const auto s = scenario_from_string(v);
         if (!s) throw ConfigError(k, "unknown scenario '" + v + "'");
         c.scenario = *s;
       }},
      {"engine",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) {
         if (v == "analytic") c.engine = Engine::analytic;
         else if (v == "envelope") c.engine = Engine::envelope;
         else if (v == "spectral") c.engine = Engine::spectral;
         else throw ConfigError(k, "expected analytic, envelope or spectral, got '" + v + "'");
       }},
      {"xi0", real(&ScenarioConfig::xi0)},
      {"k0_xi0", optional_real(&ScenarioConfig::k0_xi0)},
      {"kappa", real(&ScenarioConfig::kappa)},
      {"lambda_xi0", real(&ScenarioConfig::lambda_xi0)},
      {"eta", real(&ScenarioConfig::eta)},
      {"sweep.start", optional_real(&ScenarioConfig::sweep_start)},
      {"sweep.stop", optional_real(&ScenarioConfig::sweep_stop)},
      {"sweep.step", optional_real(&ScenarioConfig::sweep_step)},
      {"zeta", real(&ScenarioConfig::zeta)},
      {"dxi2", optional_real(&ScenarioConfig::dxi2)},
      {"n", integer(&ScenarioConfig::n)},
      {"sign", integer(&ScenarioConfig::sign)},
      {"response", text(&ScenarioConfig::response)},
      {"seed", [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.seed = to_unsigned(k, v); }},
      {"n_events",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.n_events = to_unsigned(k, v); }},
      {"phase_correlation_k", real(&ScenarioConfig::phase_correlation_k)},
      {"grid.size",
       [](ScenarioConfig& c, const std::string& k, const std::string& v) { c.grid_size = to_unsigned(k, v); }},
      {"grid.half_width", real(&ScenarioConfig::grid_half_width)},
      {"state", text(&ScenarioConfig::state)},
      {"c_abs", real(&ScenarioConfig::c_abs)},
      {"c_arg", real(&ScenarioConfig::c_arg)},
      {"alpha_abs", real(&ScenarioConfig::alpha_abs)},
      {"alpha_arg", real(&ScenarioConfig::alpha_arg)},
      {"n_max", integer(&ScenarioConfig::n_max)},
      {"fock_n", integer(&ScenarioConfig::fock_n)},
      {"output", text(&ScenarioConfig::output)},
  };
  return table;
}

void validate(const ScenarioConfig& c) {
  if (!(c.xi0 > 0.0)) throw ConfigError("xi0", "must be positive");
  if (!(c.eta >= 0.0)) throw ConfigError("eta", "must be non-negative");
  if (!(c.lambda_xi0 > 0.0)) throw ConfigError("lambda_xi0", "must be positive");
  if (c.sweep_step && !(*c.sweep_step > 0.0)) throw ConfigError("sweep.step", "must be positive");
  if (c.sweep_start && c.sweep_stop && *c.sweep_stop < *c.sweep_start) {
    throw ConfigError("sweep.stop", "must not lie before sweep.start");
  }
  if (c.n < 1) throw ConfigError("n", "must be at least 1");
  if (c.sign != 1 && c.sign != -1) throw ConfigError("sign", "must be +1 or -1");
  if (c.response != "number_resolving" && c.response != "single_click") {
    throw ConfigError("response", "expected number_resolving or single_click");
  }
  if (c.n_events < 1) throw ConfigError("n_events", "must be at least 1");
  if (c.phase_correlation_k < 0.0) throw ConfigError("phase_correlation_k", "must be positive (0 selects the default)");
  if (c.grid_size != 0 && c.grid_size < 16) throw ConfigError("grid.size", "must be 0 (automatic) or at least 16");
  if (c.grid_half_width < 0.0) throw ConfigError("grid.half_width", "must be non-negative");
  if (c.state != "coherent" && c.state != "vacuum" && c.state != "fock") {
    throw ConfigError("state", "expected coherent, vacuum or fock");
  }
  if (c.c_abs < 0.0) throw ConfigError("c_abs", "must be non-negative");
  if (c.alpha_abs < 0.0) throw ConfigError("alpha_abs", "must be non-negative");
  if (c.n_max < 0 || c.n_max > 200) throw ConfigError("n_max", "must lie in [0, 200]");
  if (c.fock_n < 0 || c.fock_n > 200) throw ConfigError("fock_n", "must lie in [0, 200]");
}

}  // namespace

double ScenarioConfig::k0_times_xi0() const {
  if (k0_xi0) return *k0_xi0;
  return scenario == Scenario::ensemble_hom || scenario == Scenario::ensemble_mz ? 40.0 : 10.0;
}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

KeyValues parse_key_values(const std::string& text, const std::string& origin) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw ConfigError("config", origin + ":" + std::to_string(number) + ": expected key = value");
    }
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_key_values(buf.str(), path);
}

std::pair<std::string, std::string> parse_override(const std::string& arg) {
  const auto kv = parse_key_values(arg, "override '" + arg + "'");
  if (kv.size() != 1) throw ConfigError("config", "override '" + arg + "' is not key=value");
  return kv.front();
}

ScenarioConfig build_config(const KeyValues& kv) {
  ScenarioConfig c;
  for (const auto& [key, value] : kv) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(key, "unknown key");
    it->second(c, key, value);
  }
  validate(c);
  return c;
}

std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& c) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string("auto"); };
  return {
      {"scenario", to_string(c.scenario)},
      {"engine", c.engine ? to_string(*c.engine) : std::string("auto")},
      {"xi0", format_number(c.xi0)},
      {"k0_xi0", format_number(c.k0_times_xi0())},
      {"kappa", format_number(c.kappa)},
      {"lambda_xi0", format_number(c.lambda_xi0)},
      {"eta", format_number(c.eta)},
      {"sweep.start", opt(c.sweep_start)},
      {"sweep.stop", opt(c.sweep_stop)},
      {"sweep.step", opt(c.sweep_step)},
      {"zeta", format_number(c.zeta)},
      {"dxi2", opt(c.dxi2)},
      {"n", std::to_string(c.n)},
      {"sign", std::to_string(c.sign)},
      {"response", c.response},
      {"seed", std::to_string(c.seed)},
      {"n_events", std::to_string(c.n_events)},
      {"phase_correlation_k", format_number(c.phase_correlation_k)},
      {"grid.size", std::to_string(c.grid_size)},
      {"grid.half_width", format_number(c.grid_half_width)},
      {"state", c.state},
      {"c_abs", format_number(c.c_abs)},
      {"c_arg", format_number(c.c_arg)},
      {"alpha_abs", format_number(c.alpha_abs)},
      {"alpha_arg", format_number(c.alpha_arg)},
      {"n_max", std::to_string(c.n_max)},
      {"fock_n", std::to_string(c.fock_n)},
  };
}

std::string to_string(Scenario s) {
  for (const auto& [value, name] : kScenarioNames) {
    if (value == s) return name;
  }
  return "unknown";
}

std::string to_string(Engine e) {
  switch (e) {
    case Engine::analytic:
      return "analytic";
    case Engine::envelope:
      return "envelope";
    case Engine::spectral:
      return "spectral";
  }
  return "unknown";
}

std::optional<Scenario> scenario_from_string(const std::string& s) {
  for (const auto& [value, name] : kScenarioNames) {
    if (s == name) return value;
  }
  return std::nullopt;
}

}  // namespace twinterf
