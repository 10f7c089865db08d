#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace qdarwin::cli;
  CLI::App app{"Redundancy of records imprinted on blackbody photons"};
  app.require_subcommand(1);

  Options options;
  std::string config, out, format, selected;
  int order = 0;
  const std::map<std::string, std::string> commands = {
      {"rate", "Decoherence rate for an illuminated region"},
      {"alpha", "Receptivity of the photon environment"},
      {"pip", "Partial information plots"},
      {"redundancy", "Redundancy against time"},
      {"oracle", "Discrete cross-check battery"},
      {"sweep", "One-parameter sweep"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "write output here instead of stdout");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--order", order, "Gauss-Legendre points in cos(theta)")->check(CLI::Range(2, 4096));
    sub->add_option("--seed", options.seed, "RNG seed");
    sub->add_option("--jobs", options.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    sub->callback([&selected, n = name] { selected = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (!config.empty()) options.config = config;
  if (!out.empty()) options.out = out;
  if (!format.empty()) options.format = format == "json" ? Format::json : Format::csv;
  if (order > 0) options.order = order;
  return run_command(selected, options, std::cout, std::cerr);
}
