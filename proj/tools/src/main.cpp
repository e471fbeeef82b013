#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "misrep/errors.hpp"
#include "misrep_app/commands.hpp"

using namespace misrep::app;

namespace {

std::map<std::string, double> parse_assignments(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("scenario parameter '" + item + "': expected key=value");
    try {
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      out[item.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("scenario parameter '" + item + "': value is not a number");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reputation bounds and belief simulation under misspecified short-run players"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  Overrides overrides;
  std::uint64_t seed = 0;
  double grid = 0.0;
  std::size_t runs = 0;
  double delta = 0.0;
  std::size_t threads = 0;
  app.add_option("--config", config_path, "Experiment JSON file");
  app.add_option("--out", out_dir, "Output directory for simulate");
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides the config)");
  auto* grid_opt = app.add_option("--grid", grid, "Grid resolution for bounds (overrides the config)");
  auto* runs_opt = app.add_option("--runs", runs, "Monte Carlo runs (overrides the config)");
  auto* delta_opt = app.add_option("--delta", delta, "Discount factor (overrides the config)");
  app.add_option("--threads", threads, "Worker threads for verify (0 = all cores)");

  auto* check = app.add_subcommand("check-separation", "Decide commitment separation");
  auto* bounds = app.add_subcommand("bounds", "Payoff ceiling, Stackelberg and reputation bounds");
  auto* stack = app.add_subcommand("stackelberg", "Mixed and pure Stackelberg payoffs");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo belief dynamics; writes CSV and JSON");
  auto* verify = app.add_subcommand("verify", "Run acceptance suites");
  std::string suite = "all";
  verify->add_option("suite", suite, "Suite name or 'all'");
  auto* scenario = app.add_subcommand("scenario", "List or emit built-in scenarios");
  scenario->require_subcommand(1);
  auto* list = scenario->add_subcommand("list", "List scenarios and their default parameters");
  auto* emit_cmd = scenario->add_subcommand("emit", "Print a scenario as an inline config document");
  std::string emit_name;
  std::vector<std::string> emit_params;
  emit_cmd->add_option("name", emit_name, "Scenario name")->required();
  emit_cmd->add_option("params", emit_params, "Parameter overrides key=value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  if (*seed_opt) overrides.seed = seed;
  if (*grid_opt) overrides.grid = grid;
  if (*runs_opt) overrides.runs = runs;
  if (*delta_opt) overrides.delta = delta;

  try {
    if (*verify) {
      AcceptanceOptions opts;
      if (overrides.seed) opts.seed = *overrides.seed;
      opts.threads = threads;
      return cmd_verify(suite, opts, std::cout, std::cerr);
    }
    if (*scenario) {
      if (*list) return cmd_scenario_list(std::cout);
      return cmd_scenario_emit(emit_name, parse_assignments(emit_params), std::cout);
    }
    if (config_path.empty()) throw ConfigError("--config is required for this command");
    const Experiment e = load_experiment(config_path, overrides);
    if (*check) return cmd_check_separation(e, std::cout);
    if (*bounds) return cmd_bounds(e, std::cout);
    if (*stack) return cmd_stackelberg(e, std::cout);
    if (*simulate) return cmd_simulate(e, out_dir, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kOk;
}
