#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "d2dcache/montecarlo.hpp"
#include "d2dcache/spatial.hpp"

namespace d2dcache {

inline constexpr std::string_view kVersion = "0.1.0";

/// Invalid configuration; `key()` names the offending setting.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Filesystem failure while reading inputs or writing results.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw key -> value settings, before validation.
using Settings = std::map<std::string, std::string>;

struct SettingInfo {
  std::string_view key;
  std::string_view help;
};

/// Every recognised key. Config files and command-line flags share these
/// names (`--<key>` on the command line).
const std::vector<SettingInfo>& setting_keys();

enum class SweepVariable { Pool, Gamma, Members };
enum class Metric { HitProb, EcRatio, OptimalPool };

struct RunConfig {
  NetworkParams network;
  std::size_t files = 500;
  double gamma = 1.0;

  std::uint64_t seed = 1;
  RegionMode region = RegionMode::Torus;
  std::size_t trials = 400;  // 0 disables Monte Carlo columns in sweeps
  std::size_t requests_per_trial = 1;
  std::size_t workers = 1;

  std::string preset = "custom";
  SweepVariable vary = SweepVariable::Gamma;
  Metric metric = Metric::HitProb;
  std::vector<double> grid;          // empty: preset default
  bool grid_overridden = false;
  std::vector<std::string> strategies = {"lhp", "lec", "mpc", "eprc"};
  bool write_svg = false;

  /// Monte Carlo settings with the given strategy.
  SimConfig sim_config(const CacheStrategy& strategy) const;
};

/// Parses `key = value` lines; `#` starts a comment. Throws ConfigError on
/// malformed lines or unknown keys, IoError if the file cannot be read.
Settings read_config_file(const std::filesystem::path& path);
Settings parse_config_text(std::string_view text);

/// Applies `settings` over the built-in defaults and validates the result.
/// Throws ConfigError naming the first bad key.
RunConfig resolve_config(const Settings& settings);

/// Fully resolved configuration in config-file syntax. Feeding it back
/// through read_config_file/resolve_config reproduces `config`.
std::string format_manifest(const RunConfig& config);

/// Locale-independent number formatting: 9 significant digits.
std::string format_number(double value);
/// Shortest text that parses back to exactly `value`.
std::string format_exact(double value);

std::string to_string(RegionMode mode);
std::string to_string(SweepVariable variable);
std::string to_string(Metric metric);

}  // namespace d2dcache
