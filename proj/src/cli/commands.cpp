#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "cli/oracle_battery.hpp"
#include "cli/parallel.hpp"
#include "qdarwin/information.hpp"
#include "qdarwin/radiometry.hpp"
#include "qdarwin/receptivity.hpp"
#include "qdarwin/superpositions.hpp"

namespace qdarwin::cli {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

Table key_values(std::vector<std::pair<std::string, Cell>> entries) {
  Table t;
  t.columns = {"quantity", "value"};
  t.key_value = true;
  for (auto& [k, v] : entries) t.rows.push_back({Cell{k}, v});
  return t;
}

std::string region_label(const SkyRegion& r) {
  std::ostringstream s;
  switch (r.kind()) {
    case RegionKind::point:
      s << "point:" << format_number(r.theta0() / kDeg);
      break;
    case RegionKind::disk:
      s << "disk:" << format_number(r.theta0() / kDeg) << ':' << format_number(r.chi() / kDeg);
      break;
    case RegionKind::isotropic:
      s << "isotropic";
      break;
    case RegionKind::custom:
      s << "custom";
      break;
  }
  return s.str();
}

std::vector<double> make_grid(const std::string& key, double start, double stop, std::int64_t count, bool log_spacing) {
  if (count < 2) throw ConfigError(key.empty() ? "count" : key, "count must be at least 2");
  if (log_spacing && !(start > 0.0 && stop > 0.0)) throw ConfigError("spacing", "log spacing needs positive endpoints");
  std::vector<double> grid(count);
  for (std::int64_t i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(count - 1);
    grid[i] = log_spacing ? std::exp(std::log(start) + u * (std::log(stop) - std::log(start))) : start + u * (stop - start);
  }
  grid.back() = stop;
  return grid;
}

bool log_spacing(const Config& config) {
  if (!config.has("spacing")) return false;
  const std::string s = config.get_string("spacing");
  if (s == "log") return true;
  if (s == "linear") return false;
  throw ConfigError("spacing", "expected linear or log");
}

// Re-throws parameter-range errors as configuration errors naming `key`.
template <class Fn>
auto keyed(const char* key, Fn&& fn) {
  try {
    return fn();
  } catch (const std::domain_error& e) {
    throw ConfigError(key, e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key, e.what());
  }
}

void add_regime_warnings(const Scenario& s, CommandOutput& out) {
  for (auto& w : s.regime_warnings()) out.warnings.push_back(w);
}

}  // namespace

QuadratureOrder Options::quadrature() const {
  if (!order) return {};
  return QuadratureOrder::from_cos_points(*order);
}

CommandOutput cmd_rate(const Config& config, const Options& options) {
  config.require_only(kScenarioKeys);
  const Scenario s = parse_scenario(config);
  CommandOutput out;
  add_regime_warnings(s, out);
  std::vector<std::pair<std::string, Cell>> kv;
  kv.emplace_back("region", Cell{region_label(s.region)});
  kv.emplace_back("omega_sr", s.region.solid_angle());
  kv.emplace_back("effective_radius_m", s.effective_radius());
  const double T_D_inv = isotropic_rate(s);
  if (s.region.kind() == RegionKind::point) {
    if (!s.irradiance_W_m2) throw ConfigError("irradiance_W_m2", "required for point regions");
    const double rate = point_source_rate(s, s.region.theta0());
    kv.emplace_back("tau_D_inv_s", rate);
    kv.emplace_back("T_D_inv_s", T_D_inv);
    kv.emplace_back("ratio", rate / T_D_inv);
    kv.emplace_back("photon_density_m3", photon_number_density_from_irradiance(*s.irradiance_W_m2, s.temperature_K));
  } else {
    const RateResult r = decoherence_rate(s, options.quadrature());
    if (!r.diagnostic.empty()) out.warnings.push_back(r.diagnostic);
    kv.emplace_back("tau_D_inv_s", r.tau_D_inv);
    kv.emplace_back("T_D_inv_s", r.T_D_inv);
    kv.emplace_back("ratio", r.ratio);
    kv.emplace_back("photon_density_m3", r.photon_density);
    if (s.region.kind() == RegionKind::disk) {
      const double closed = disk_rate(s.region.theta0(), s.region.chi());
      kv.emplace_back("ratio_closed_form", closed);
      kv.emplace_back("closed_form_gap", std::abs(closed - r.ratio));
    }
  }
  out.tables.push_back(key_values(std::move(kv)));
  return out;
}

CommandOutput cmd_alpha(const Config& config, const Options& options) {
  config.require_only(kScenarioKeys);
  const SkyRegion region = parse_region(config);
  CommandOutput out;
  const ReceptivityResult r = alpha_numeric(region, options.quadrature());
  std::vector<std::pair<std::string, Cell>> kv;
  kv.emplace_back("region", Cell{region_label(region)});
  kv.emplace_back("omega_sr", region.solid_angle());
  kv.emplace_back("alpha", r.alpha);
  if (region.kind() == RegionKind::disk) {
    const double closed = alpha_disk(region.theta0(), region.chi());
    kv.emplace_back("alpha_closed_form", closed);
    kv.emplace_back("quadrature_gap", std::abs(closed - r.alpha));
  }
  if (region.kind() != RegionKind::point) {
    kv.emplace_back("tau_D_ratio", r.tau_D_ratio);
    kv.emplace_back("tau_R_ratio", r.tau_R_ratio);
  }
  if (has_physical_scenario(config)) {
    const Scenario s = parse_scenario(config);
    add_regime_warnings(s, out);
    double tau_D_inv = 0.0;
    if (region.kind() == RegionKind::point) {
      if (s.irradiance_W_m2) tau_D_inv = point_source_rate(s, region.theta0());
    } else {
      tau_D_inv = decoherence_rate(s, options.quadrature()).tau_D_inv;
    }
    if (region.kind() != RegionKind::point || s.irradiance_W_m2) {
      kv.emplace_back("tau_D_inv_s", tau_D_inv);
      kv.emplace_back("tau_R_inv_s", redundancy_rate(r.alpha, tau_D_inv));
    }
  }
  out.tables.push_back(key_values(std::move(kv)));
  return out;
}

CommandOutput cmd_pip(const Config& config, const Options& options) {
  config.require_only({"alpha", "times", "f_count", "f_grid"});
  std::vector<double> default_times;
  for (int k = -2; k <= 7; ++k) default_times.push_back(std::pow(10.0, 0.5 * k));
  const std::vector<double> alphas = config.get_list("alpha", {1.0, 0.5, 0.01, 0.0});
  const std::vector<double> times = config.get_list("times", default_times);
  std::vector<double> f_grid;
  if (config.has("f_grid")) {
    f_grid = config.get_list("f_grid");
  } else {
    f_grid = make_grid("f_count", 0.0, 1.0, config.get_int("f_count", 101), false);
  }
  struct Slice {
    double alpha;
    double t;
  };
  std::vector<Slice> slices;
  for (double a : alphas) {
    for (double t : times) slices.push_back({a, t});
  }
  const auto curves = parallel_map<PipCurve>(slices.size(), options.jobs, [&](std::size_t i) {
    const auto gamma = keyed("times", [&] { return DecoherenceFactor::from_time(slices[i].t); });
    return keyed("alpha", [&] { return pip_curve(gamma, slices[i].alpha, f_grid); });
  });
  CommandOutput out;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    Table t;
    t.title = "alpha=" + format_number(slices[i].alpha) + " t_over_tauD=" + format_number(slices[i].t);
    t.columns = {"f", "mi_nats"};
    for (const auto& s : curves[i].samples) t.rows.push_back({s.f, s.mi});
    out.tables.push_back(std::move(t));
  }
  return out;
}

namespace {

std::vector<Cell> redundancy_row(double t, double alpha, double delta) {
  const auto exact = redundancy_exact(DecoherenceFactor::from_time(t), alpha, delta);
  std::optional<double> lower;
  if (t > std::log(2.0 / delta)) lower = redundancy_lower_bound(t, delta, alpha);
  return {t, blank_if_empty(exact && *exact >= 1.0 ? exact : std::nullopt), redundancy_estimate(t, alpha, delta),
          blank_if_empty(lower)};
}

}  // namespace

CommandOutput cmd_redundancy(const Config& config, const Options& options) {
  config.require_only({"alpha", "delta", "t_start", "t_stop", "t_count", "spacing"});
  const std::vector<double> alphas = config.get_list("alpha", {1.0, 0.5, 0.25});
  const double delta = config.get_double("delta", 0.01);
  if (!(delta > 0.0 && delta < 1.0 / (2.0 * std::numbers::ln2))) {
    throw ConfigError("delta", "must lie in (0, 1/(2 ln 2))");
  }
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) throw ConfigError("alpha", "each value must lie in (0, 1]");
  }
  const auto times = make_grid("t_count", config.get_double("t_start", 1.0), config.get_double("t_stop", 500.0),
                               config.get_int("t_count", 500), log_spacing(config));
  for (double t : times) {
    if (!(t >= 0.0)) throw ConfigError("t_start", "times must be non-negative");
  }
  CommandOutput out;
  for (double alpha : alphas) {
    const auto rows = parallel_map<std::vector<Cell>>(times.size(), options.jobs,
                                                      [&](std::size_t i) { return redundancy_row(times[i], alpha, delta); });
    Table t;
    t.title = "alpha=" + format_number(alpha) + " delta=" + format_number(delta);
    t.columns = {"t_over_tauD", "R_exact", "R_estimate", "R_lower"};
    t.rows = rows;
    out.tables.push_back(std::move(t));
  }
  if (times.front() < 10.0) out.warnings.push_back("R_estimate is a long-time form; rows with t < 10 tau_D are outside it");
  return out;
}

CommandOutput cmd_oracle(const Config& config, const Options& options) {
  config.require_only({"b", "fN", "spectrum_cap", "trials", "alpha_cos_points"});
  OracleSettings settings;
  settings.b = config.get_list("b", settings.b);
  settings.fN = static_cast<int>(config.get_int("fN", settings.fN));
  settings.spectrum_cap = config.get_double("spectrum_cap", settings.spectrum_cap);
  settings.trials = static_cast<int>(config.get_int("trials", settings.trials));
  settings.seed = options.seed;
  if (config.has("alpha_cos_points")) {
    settings.alpha_cos_points.clear();
    for (double v : config.get_list("alpha_cos_points")) {
      if (v < 2 || v != std::floor(v)) throw ConfigError("alpha_cos_points", "entries must be integers >= 2");
      settings.alpha_cos_points.push_back(static_cast<int>(v));
    }
  }
  if (settings.fN < 1) throw ConfigError("fN", "must be at least 1");
  if (settings.trials < 0) throw ConfigError("trials", "must be non-negative");
  for (double v : settings.b) {
    if (!(v >= -1.0 && v <= 0.0)) throw ConfigError("b", "entries must lie in [-1, 0]");
  }
  const OracleReport report = run_oracle_battery(settings);
  CommandOutput out;
  out.json = to_json(report);
  out.checks_failed = !report.all_pass();
  Table t;
  t.title = "seed=" + std::to_string(settings.seed);
  t.columns = {"check", "pass", "value", "threshold"};
  for (const auto& c : report.checks) {
    t.rows.push_back({Cell{c.name}, Cell{std::string(c.pass ? "true" : "false")}, c.value, c.threshold});
  }
  out.tables.push_back(std::move(t));
  return out;
}

CommandOutput cmd_sweep(const Config& config, const Options& options) {
  config.require_only({"axis", "start", "stop", "count", "spacing", "alpha", "f", "t_over_tauD", "delta", "mu", "M",
                       "theta0_deg", "chi_deg"});
  const std::string axis = config.get_string("axis");
  const auto values = make_grid("count", config.get_double("start"), config.get_double("stop"),
                                config.get_int("count", 11), log_spacing(config));
  const double alpha = config.get_double("alpha", 1.0);
  const double f = config.get_double("f", 0.2);
  const double t = config.get_double("t_over_tauD", 10.0);
  const double delta = config.get_double("delta", 0.01);
  const double mu = config.get_double("mu", 0.0);
  const double m = config.get_double("M", 2.0);
  const double theta0 = config.get_double("theta0_deg", 90.0);
  const double chi = config.get_double("chi_deg", 0.0);
  const QuadratureOrder order = options.quadrature();

  Table table;
  std::function<std::vector<Cell>(double)> row;
  if (axis == "t_over_tauD") {
    table.columns = {"t_over_tauD", "mi_nats", "R_exact", "R_estimate", "R_lower"};
    row = [&](double v) {
      std::vector<Cell> r{v, keyed("alpha", [&] { return mutual_information(DecoherenceFactor::from_time(v), alpha, f); })};
      const auto tail = keyed("delta", [&] { return redundancy_row(v, alpha, delta); });
      r.insert(r.end(), tail.begin() + 1, tail.end());
      return r;
    };
  } else if (axis == "f") {
    table.columns = {"f", "mi_nats", "mi_approx_nats"};
    row = [&](double v) {
      const auto g = keyed("t_over_tauD", [&] { return DecoherenceFactor::from_time(t); });
      std::optional<double> approx;
      if (v > 0.0 && v < 0.5 && alpha > 0.0) approx = mutual_information_approx(g, alpha, v);
      return std::vector<Cell>{v, keyed("f", [&] { return mutual_information(g, alpha, v); }), blank_if_empty(approx)};
    };
  } else if (axis == "theta0" || axis == "chi") {
    table.columns = {axis + "_deg", "omega_sr", "rate_closed_form", "rate_quadrature", "alpha_closed_form",
                     "alpha_quadrature", "tau_R_ratio"};
    row = [&, axis](double v) {
      const double th = (axis == "theta0" ? v : theta0) * kDeg;
      const double ch = (axis == "chi" ? v : chi) * kDeg;
      const SkyRegion region = keyed(axis == "theta0" ? "start" : "chi_deg", [&] { return SkyRegion::disk(th, ch); });
      const ReceptivityResult r = alpha_numeric(region, order);
      return std::vector<Cell>{v, region.solid_angle(), disk_rate(th, ch), r.tau_D_ratio, alpha_disk(th, ch), r.alpha,
                               r.tau_R_ratio};
    };
  } else if (axis == "delta") {
    table.columns = {"delta", "R_exact", "R_estimate", "R_lower"};
    row = [&](double v) {
      auto r = keyed("start", [&] { return redundancy_row(t, alpha, v); });
      r[0] = v;
      return r;
    };
  } else if (axis == "mu") {
    table.columns = {"mu", "mi_nats", "plateau_nats", "mi_renormalized", "limit_renormalized"};
    row = [&](double v) {
      const auto g = keyed("t_over_tauD", [&] { return DecoherenceFactor::from_time(t); });
      const Imbalance imb = keyed("start", [&] { return Imbalance::from_mu(v); });
      const double mi = mi_unbalanced(g, f, imb);
      std::optional<double> renorm;
      if (imb.plateau() > 0.0) renorm = mi / imb.plateau();
      return std::vector<Cell>{v, mi, imb.plateau(), blank_if_empty(renorm), mi_unbalanced_limit(g, f)};
    };
  } else if (axis == "M") {
    table.columns = {"M", "mi_nats", "mi_renormalized", "limit_renormalized"};
    row = [&](double v) {
      const double rounded = std::round(v);
      if (rounded < 2.0) throw ConfigError("start", "M must be at least 2");
      const auto mm = static_cast<std::uint64_t>(rounded);
      const auto g = keyed("t_over_tauD", [&] { return DecoherenceFactor::from_time(t); });
      return std::vector<Cell>{rounded, mi_mway(g, f, mm), mi_mway_renormalized(g, f, mm), mi_mway_limit(g, f)};
    };
  } else {
    throw ConfigError("axis", "expected one of t_over_tauD, f, theta0, chi, delta, mu, M");
  }
  (void)m;
  (void)mu;
  table.title = "axis=" + axis;
  table.rows = parallel_map<std::vector<Cell>>(values.size(), options.jobs, [&](std::size_t i) { return row(values[i]); });
  CommandOutput out;
  out.tables.push_back(std::move(table));
  return out;
}

int run_command(const std::string& name, const Options& options, std::ostream& out, std::ostream& err) {
  try {
    Config config;
    if (options.config) config = Config::load(*options.config);
    CommandOutput result;
    if (name == "rate") {
      result = cmd_rate(config, options);
    } else if (name == "alpha") {
      result = cmd_alpha(config, options);
    } else if (name == "pip") {
      result = cmd_pip(config, options);
    } else if (name == "redundancy") {
      result = cmd_redundancy(config, options);
    } else if (name == "oracle") {
      result = cmd_oracle(config, options);
    } else if (name == "sweep") {
      result = cmd_sweep(config, options);
    } else {
      err << "error: unknown command '" << name << "'\n";
      return kExitConfig;
    }
    for (const auto& w : result.warnings) err << "warning: " << w << '\n';

    const Format format = options.format.value_or(name == "oracle" ? Format::json : Format::csv);
    std::ofstream file;
    if (options.out) {
      file.open(*options.out);
      if (!file) {
        err << "error: cannot write " << options.out->string() << '\n';
        return kExitConfig;
      }
    }
    std::ostream& sink = options.out ? static_cast<std::ostream&>(file) : out;
    if (format == Format::json) {
      sink << (result.json ? *result.json : to_json(result.tables)).dump(2) << '\n';
    } else {
      write_csv(sink, result.tables);
    }
    if (result.checks_failed) {
      err << "error: oracle checks failed\n";
      return kExitCheckFailed;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ResourceCapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace qdarwin::cli
