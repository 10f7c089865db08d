#pragma once

// Subcommand implementations shared by the qdarwin tool and the tests.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/csv.hpp"
#include "qdarwin/sky_geometry.hpp"

namespace qdarwin::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitResourceCap = 3, kExitCheckFailed = 4 };

enum class Format { csv, json };

struct Options {
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  std::optional<Format> format;
  std::optional<int> order;
  std::uint64_t seed = 1;
  unsigned jobs = 1;

  [[nodiscard]] QuadratureOrder quadrature() const;
};

struct CommandOutput {
  std::vector<Table> tables;
  std::vector<std::string> warnings;
  /// When set, emitted verbatim for --format json instead of the tables.
  std::optional<nlohmann::ordered_json> json;
  bool checks_failed = false;
};

CommandOutput cmd_rate(const Config& config, const Options& options);
CommandOutput cmd_alpha(const Config& config, const Options& options);
CommandOutput cmd_pip(const Config& config, const Options& options);
CommandOutput cmd_redundancy(const Config& config, const Options& options);
CommandOutput cmd_oracle(const Config& config, const Options& options);
CommandOutput cmd_sweep(const Config& config, const Options& options);

/// Runs a subcommand, writes its output and returns the process exit code.
int run_command(const std::string& name, const Options& options, std::ostream& out, std::ostream& err);

}  // namespace qdarwin::cli
