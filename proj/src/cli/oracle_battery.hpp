#pragma once

// Self-checks of the closed forms against the finite model and against
// direct diagonalisation.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdarwin/discrete_oracle.hpp"
#include "qdarwin/superpositions.hpp"

namespace qdarwin::cli {

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
[[nodiscard]] inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct IntervalTrial {
  DecoherenceMatrix gamma;
  std::vector<double> p;
  double f = 0.0;
};

/// Balanced M = 3 states with pairwise factors exp(-u), u uniform in [5, 8],
/// and f uniform in (0, 1/2).
[[nodiscard]] std::vector<IntervalTrial> make_interval_trials(std::uint64_t seed, int count);

struct OracleSettings {
  std::vector<double> b{-0.02, -0.01, -0.005};
  int fN = 2;
  double spectrum_cap = kDefaultSpectrumCap;
  int trials = 100;
  std::vector<int> alpha_cos_points{8, 16};
  std::uint64_t seed = 1;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct FragmentStudy {
  Nats exact = 0.0;
  Nats analytic = 0.0;
  double discrepancy = 0.0;
  std::vector<double> scales;         // b multiplied by these
  std::vector<double> discrepancies;  // at each scale
  std::vector<double> halving_ratios;
  double observed_order = 0.0;  // log2 of the last halving ratio
};

/// Exact vs first-order fragment entropy change for b scaled by 1, 1/2, 1/4, ...
[[nodiscard]] FragmentStudy fragment_study(std::span<const double> b, int fN, int halvings, double cap);

struct OracleReport {
  OracleSettings settings;
  FragmentStudy fragment;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool all_pass() const;
};

/// Throws ResourceCapExceeded when the configured model is over the cap.
[[nodiscard]] OracleReport run_oracle_battery(const OracleSettings& settings);

[[nodiscard]] nlohmann::ordered_json to_json(const OracleReport& report);

}  // namespace qdarwin::cli
