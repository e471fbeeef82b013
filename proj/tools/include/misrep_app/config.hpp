#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "misrep/scenarios.hpp"
#include "misrep/score_bounds.hpp"
#include "misrep/simulator.hpp"

namespace misrep::app {

// Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem failure while reading or writing.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BoundsSpec {
  double grid = 1e-3;
  double beta_subgrid = 1e-2;
  std::size_t threads = 0;
};

struct Experiment {
  Scenario scenario;
  bool from_catalog = false;
  std::optional<SimulationConfig> simulation;
  bool seed_generated = false;
  BoundsSpec bounds;
};

// Command-line overrides applied after parsing.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> grid;
  std::optional<std::size_t> runs;
  std::optional<double> delta;
};

Experiment parse_experiment(const nlohmann::json& doc, const Overrides& overrides = {});
Experiment load_experiment(const std::string& path, const Overrides& overrides = {});

nlohmann::json game_to_json(const StageGame& game);
nlohmann::json framework_to_json(const Framework& framework, const std::optional<Distribution>& alpha_star);
nlohmann::json strategy_to_json(const Strategy& s);
nlohmann::json simulation_to_json(const SimulationConfig& config);
// Inline document: {"game", "framework"} plus "simulation" and "bounds" when present.
nlohmann::json experiment_to_json(const Experiment& experiment);
// Inline document for a scenario, with a default simulation block.
nlohmann::json scenario_document(const Scenario& scenario);

nlohmann::json to_json(const Distribution& d);
nlohmann::json to_json(const Matrix& m);

}  // namespace misrep::app
