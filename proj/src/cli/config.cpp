#include "cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>

namespace qdarwin::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc{} || ptr != end || t.empty()) return std::nullopt;
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) parts.push_back(trim(part));
  return parts;
}

}  // namespace

Config Config::parse(std::istream& in, std::filesystem::path base_dir) {
  Config config;
  config.base_dir_ = std::move(base_dir);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line, "line " + std::to_string(line_no) + " is not of the form key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", "line " + std::to_string(line_no) + " has an empty key");
    if (config.values_.count(key)) throw ConfigError(key, "given more than once");
    config.values_[key] = value;
  }
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path.string());
  return parse(in, path.parent_path());
}

std::string Config::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(key, "missing");
  return it->second;
}

double Config::get_double(const std::string& key) const {
  const auto v = to_double(get_string(key));
  if (!v) throw ConfigError(key, "not a number: '" + get_string(key) + "'");
  return *v;
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
  if (!has(key)) return fallback;
  const std::string t = get_string(key);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) throw ConfigError(key, "not an integer: '" + t + "'");
  return v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string t = get_string(key);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError(key, "not a boolean: '" + t + "'");
}

std::vector<double> Config::get_list(const std::string& key) const {
  std::vector<double> out;
  for (const auto& part : split(get_string(key), ',')) {
    const auto v = to_double(part);
    if (!v) throw ConfigError(key, "not a number: '" + part + "'");
    out.push_back(*v);
  }
  if (out.empty()) throw ConfigError(key, "empty list");
  return out;
}

std::vector<double> Config::get_list(const std::string& key, std::vector<double> fallback) const {
  return has(key) ? get_list(key) : fallback;
}

void Config::require_only(std::initializer_list<const char*> allowed) const {
  for (const auto& [key, value] : values_) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!ok) throw ConfigError(key, "not recognised by this command");
  }
}

SkyRegion parse_region(const Config& config) {
  constexpr double deg = std::numbers::pi / 180.0;
  const std::string text = config.get_string("region");
  const auto parts = split(text, ':');
  auto number = [&](std::size_t i) {
    if (i >= parts.size()) throw ConfigError("region", "missing field in '" + text + "'");
    const auto v = to_double(parts[i]);
    if (!v) throw ConfigError("region", "not a number: '" + parts[i] + "'");
    return *v;
  };
  try {
    if (parts[0] == "isotropic" && parts.size() == 1) return SkyRegion::isotropic();
    if (parts[0] == "point" && parts.size() == 2) return SkyRegion::point(number(1) * deg);
    if (parts[0] == "disk" && parts.size() == 3) return SkyRegion::disk(number(1) * deg, number(2) * deg);
    if (parts[0] == "custom" && parts.size() >= 2) {
      std::filesystem::path path = text.substr(text.find(':') + 1);
      if (path.is_relative()) path = config.base_dir() / path;
      return SkyRegion::custom(std::make_shared<const IndicatorGrid>(load_indicator_grid(path)));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("region", e.what());
  }
  throw ConfigError("region", "expected disk:<theta0_deg>:<chi_deg>, point:<theta_deg>, isotropic or custom:<path>");
}

bool has_physical_scenario(const Config& config) {
  return config.has("radius_m") && config.has("permittivity") && config.has("dx_m") && config.has("temperature_K");
}

Scenario parse_scenario(const Config& config) {
  Scenario s;
  s.radius_m = config.get_double("radius_m");
  s.permittivity = config.get_double("permittivity");
  s.dx_m = config.get_double("dx_m");
  s.temperature_K = config.get_double("temperature_K");
  s.region = parse_region(config);
  if (config.has("irradiance_W_m2")) s.irradiance_W_m2 = config.get_double("irradiance_W_m2");
  if (config.has("radius_model")) {
    const std::string m = config.get_string("radius_model");
    if (m == "clausius_mossotti") {
      s.radius_model = RadiusModel::clausius_mossotti;
    } else if (m == "minus_two") {
      s.radius_model = RadiusModel::minus_two_denominator;
    } else {
      throw ConfigError("radius_model", "expected clausius_mossotti or minus_two");
    }
  }
  // Map each validation failure back to its key.
  auto check = [&](const char* key, bool ok, const char* why) {
    if (!ok) throw ConfigError(key, why);
  };
  check("radius_m", s.radius_m > 0.0, "must be positive");
  check("dx_m", s.dx_m > 0.0, "must be positive");
  check("temperature_K", s.temperature_K > 0.0, "must be positive");
  check("permittivity", s.permittivity > 1.0, "must exceed 1");
  check("permittivity", s.radius_model != RadiusModel::minus_two_denominator || s.permittivity > 2.0,
        "must exceed 2 with radius_model = minus_two");
  check("irradiance_W_m2", !s.irradiance_W_m2 || *s.irradiance_W_m2 > 0.0, "must be positive");
  return s;
}

}  // namespace qdarwin::cli
