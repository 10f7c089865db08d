#pragma once

// key = value configuration files.

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdarwin/radiometry.hpp"
#include "qdarwin/sky_geometry.hpp"

namespace qdarwin::cli {

/// Malformed configuration; `key()` names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : "config key '" + key + "': " + message), key_(std::move(key)) {}
  [[nodiscard]] const std::string& key() const { return key_; }

 private:
  std::string key_;
};

class Config {
 public:
  Config() = default;
  static Config parse(std::istream& in, std::filesystem::path base_dir = {});
  static Config load(const std::filesystem::path& path);

  [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }
  [[nodiscard]] std::string get_string(const std::string& key) const;
  [[nodiscard]] double get_double(const std::string& key) const;
  [[nodiscard]] double get_double(const std::string& key, double fallback) const;
  [[nodiscard]] std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated numbers.
  [[nodiscard]] std::vector<double> get_list(const std::string& key) const;
  [[nodiscard]] std::vector<double> get_list(const std::string& key, std::vector<double> fallback) const;

  /// Throws ConfigError for the first key not in `allowed`.
  void require_only(std::initializer_list<const char*> allowed) const;
  [[nodiscard]] const std::filesystem::path& base_dir() const { return base_dir_; }
  void set(const std::string& key, const std::string& value) { values_[key] = value; }

 private:
  std::map<std::string, std::string> values_;
  std::filesystem::path base_dir_;
};

/// Keys read by parse_region and parse_scenario.
inline constexpr std::initializer_list<const char*> kScenarioKeys = {
    "radius_m", "permittivity", "dx_m", "temperature_K", "region", "irradiance_W_m2", "radius_model"};

/// `disk:<theta0_deg>:<chi_deg>`, `point:<theta_deg>`, `isotropic` or `custom:<path>`.
[[nodiscard]] SkyRegion parse_region(const Config& config);

/// True when all physical keys are present.
[[nodiscard]] bool has_physical_scenario(const Config& config);
[[nodiscard]] Scenario parse_scenario(const Config& config);

}  // namespace qdarwin::cli
