#include "misrep_app/config.hpp"

#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "misrep/errors.hpp"

namespace misrep::app {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  const auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const std::string& path) {
  for (const auto& [k, _] : obj.items()) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) fail(path + "." + k, "unknown field");
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::uint64_t as_u64(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail(path, "expected a nonnegative integer");
}

std::vector<double> as_vector(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Distribution as_distribution(const json& j, const std::string& path) {
  try {
    return Distribution(as_vector(j, path));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Matrix as_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(as_vector(j[i], path + "[" + std::to_string(i) + "]"));
    if (rows.back().size() != rows.front().size()) fail(path, "rows have different lengths");
  }
  return Matrix::from_rows(rows);
}

std::vector<std::string> as_strings(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) fail(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

StageGame parse_game(const json& j, const std::string& path) {
  reject_unknown(j, {"labels", "u", "v_tilde", "rho"}, path);
  ActionLabels labels;
  if (const json* l = optional_field(j, "labels")) {
    reject_unknown(*l, {"long_run", "short_run", "signals"}, path + ".labels");
    if (const json* x = optional_field(*l, "long_run")) labels.long_run = as_strings(*x, path + ".labels.long_run");
    if (const json* x = optional_field(*l, "short_run")) labels.short_run = as_strings(*x, path + ".labels.short_run");
    if (const json* x = optional_field(*l, "signals")) labels.signals = as_strings(*x, path + ".labels.signals");
  }
  Matrix u = as_matrix(field(j, "u", path), path + ".u");
  Matrix vt = as_matrix(field(j, "v_tilde", path), path + ".v_tilde");
  const json& rj = field(j, "rho", path);
  if (!rj.is_array()) fail(path + ".rho", "expected one signal distribution per long-run action");
  std::vector<Distribution> rows;
  for (std::size_t a = 0; a < rj.size(); ++a)
    rows.push_back(as_distribution(rj[a], path + ".rho[" + std::to_string(a) + "]"));
  try {
    return StageGame(std::move(labels), std::move(u), std::move(vt), SignalStructure(std::move(rows)));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

struct ParsedFramework {
  Framework framework;
  std::optional<Distribution> alpha_star;
};

ParsedFramework parse_framework(const json& j, const std::string& path) {
  reject_unknown(j, {"models", "kernels", "prior", "commitment_action", "normal_correctly_specified", "alpha_star"},
                 path);
  auto models = as_strings(field(j, "models", path), path + ".models");
  const json& kj = field(j, "kernels", path);
  if (!kj.is_array() || kj.size() != models.size()) fail(path + ".kernels", "expected one entry per model");
  std::vector<std::vector<Distribution>> normal;
  std::vector<std::vector<Distribution>> commitment;
  for (std::size_t m = 0; m < kj.size(); ++m) {
    const std::string pm = path + ".kernels[" + std::to_string(m) + "]";
    if (!kj[m].is_array() || kj[m].size() != kNumTypes) fail(pm, "expected [normal, commitment] kernel blocks");
    for (std::size_t t = 0; t < kNumTypes; ++t) {
      const std::string pt = pm + "[" + std::to_string(t) + "]";
      if (!kj[m][t].is_array()) fail(pt, "expected one signal distribution per action");
      std::vector<Distribution> rows;
      for (std::size_t a = 0; a < kj[m][t].size(); ++a)
        rows.push_back(as_distribution(kj[m][t][a], pt + "[" + std::to_string(a) + "]"));
      (t == 0 ? normal : commitment).push_back(std::move(rows));
    }
  }
  Matrix prior = as_matrix(field(j, "prior", path), path + ".prior");
  Distribution alpha_hat = as_distribution(field(j, "commitment_action", path), path + ".commitment_action");
  const json& cs = field(j, "normal_correctly_specified", path);
  if (!cs.is_boolean()) fail(path + ".normal_correctly_specified", "expected true or false");
  std::optional<Distribution> alpha_star;
  if (const json* as = optional_field(j, "alpha_star")) alpha_star = as_distribution(*as, path + ".alpha_star");
  try {
    return {Framework(std::move(models), std::move(normal), std::move(commitment), std::move(prior),
                      std::move(alpha_hat), cs.get<bool>()),
            std::move(alpha_star)};
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Scenario parse_scenario_ref(const json& j, const std::string& path) {
  std::string name;
  std::map<std::string, double> params;
  if (j.is_string()) {
    name = j.get<std::string>();
  } else if (j.is_object()) {
    reject_unknown(j, {"name", "params"}, path);
    const json& n = field(j, "name", path);
    if (!n.is_string()) fail(path + ".name", "expected a string");
    name = n.get<std::string>();
    if (const json* p = optional_field(j, "params")) {
      if (!p->is_object()) fail(path + ".params", "expected an object");
      for (const auto& [k, v] : p->items()) params[k] = as_number(v, path + ".params." + k);
    }
  } else {
    fail(path, "expected a scenario name or {\"name\", \"params\"}");
  }
  try {
    return make_scenario(name, params);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

Strategy parse_strategy(const json& j, const std::string& path, const Scenario& s) {
  if (j.is_string()) {
    const auto key = j.get<std::string>();
    if (key == "commitment") return Strategy::stationary(s.framework.commitment_action());
    if (key == "alpha_star") {
      if (!s.alpha_star) fail(path, "scenario has no alpha_star");
      return Strategy::stationary(*s.alpha_star);
    }
    fail(path, "expected a mixed action, a list of them, \"commitment\" or \"alpha_star\"");
  }
  if (!j.is_array() || j.empty()) fail(path, "expected a mixed action or a non-empty list of them");
  if (j.front().is_array()) {
    std::vector<Distribution> periods;
    for (std::size_t t = 0; t < j.size(); ++t)
      periods.push_back(as_distribution(j[t], path + "[" + std::to_string(t) + "]"));
    return Strategy::scripted(std::move(periods));
  }
  return Strategy::stationary(as_distribution(j, path));
}

SimulationConfig parse_simulation(const json& j, const std::string& path, const Scenario& s, bool& seed_generated) {
  reject_unknown(j, {"delta", "horizon", "truncation_tolerance", "runs", "master_seed", "true_type", "normal_strategy",
                     "slp_conjecture", "alpha_star", "threads"},
                 path);
  SimulationConfig c;
  if (const json* x = optional_field(j, "delta")) c.delta = as_number(*x, path + ".delta");
  if (const json* x = optional_field(j, "horizon")) c.horizon = as_u64(*x, path + ".horizon");
  if (const json* x = optional_field(j, "truncation_tolerance"))
    c.truncation_tolerance = as_number(*x, path + ".truncation_tolerance");
  if (const json* x = optional_field(j, "runs")) c.runs = as_u64(*x, path + ".runs");
  if (const json* x = optional_field(j, "threads")) c.threads = as_u64(*x, path + ".threads");
  if (const json* x = optional_field(j, "master_seed")) {
    c.master_seed = as_u64(*x, path + ".master_seed");
  } else {
    std::random_device rd;
    c.master_seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    seed_generated = true;
  }
  if (const json* x = optional_field(j, "true_type")) {
    if (!x->is_string()) fail(path + ".true_type", "expected \"normal\" or \"commitment\"");
    try {
      c.true_type = player_type_from_string(x->get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path + ".true_type", e.what());
    }
  }
  if (const json* x = optional_field(j, "normal_strategy")) {
    c.normal_strategy = parse_strategy(*x, path + ".normal_strategy", s);
  } else {
    c.normal_strategy = Strategy::stationary(s.alpha_star ? *s.alpha_star : s.framework.commitment_action());
  }
  if (const json* x = optional_field(j, "slp_conjecture")) c.slp_conjecture = parse_strategy(*x, path + ".slp_conjecture", s);
  if (const json* x = optional_field(j, "alpha_star")) {
    if (x->is_string() && x->get<std::string>() == "alpha_star") {
      if (!s.alpha_star) fail(path + ".alpha_star", "scenario has no alpha_star");
      c.alpha_star = s.alpha_star;
    } else {
      c.alpha_star = as_distribution(*x, path + ".alpha_star");
    }
  } else {
    c.alpha_star = s.alpha_star;
  }
  try {
    validate(c, s.game, s.framework);
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  return c;
}

BoundsSpec parse_bounds(const json& j, const std::string& path) {
  reject_unknown(j, {"grid", "beta_subgrid", "threads"}, path);
  BoundsSpec b;
  if (const json* x = optional_field(j, "grid")) b.grid = as_number(*x, path + ".grid");
  if (const json* x = optional_field(j, "beta_subgrid")) b.beta_subgrid = as_number(*x, path + ".beta_subgrid");
  if (const json* x = optional_field(j, "threads")) b.threads = as_u64(*x, path + ".threads");
  return b;
}

void check_grid(double g, const std::string& path) {
  if (!(g > 0.0 && g <= 1.0)) fail(path, "grid resolution must lie in (0, 1]");
}

}  // namespace

Experiment parse_experiment(const json& doc, const Overrides& overrides) {
  const std::string root = "$";
  if (!doc.is_object()) fail(root, "expected a JSON object");
  reject_unknown(doc, {"scenario", "game", "framework", "simulation", "bounds"}, root);
  const json* sj = optional_field(doc, "scenario");
  const json* fj = optional_field(doc, "framework");
  const json* gj = optional_field(doc, "game");
  if (sj && (fj || gj)) fail(root, "give either \"scenario\" or \"game\" + \"framework\", not both");
  if (!sj && !(fj && gj)) fail(root, "missing \"scenario\" or the pair \"game\" + \"framework\"");

  std::optional<Scenario> scenario;
  if (sj) {
    scenario = parse_scenario_ref(*sj, root + ".scenario");
  } else {
    StageGame game = parse_game(*gj, root + ".game");
    auto pf = parse_framework(*fj, root + ".framework");
    try {
      pf.framework.check_against(game.rho());
    } catch (const std::invalid_argument& e) {
      fail(root + ".framework", e.what());
    }
    if (pf.alpha_star && pf.alpha_star->size() != game.num_long_run_actions())
      fail(root + ".framework.alpha_star", "length differs from the long-run action count");
    scenario = Scenario{"inline", {}, std::move(game), std::move(pf.framework), std::move(pf.alpha_star)};
  }
  Experiment e{std::move(*scenario), sj != nullptr, std::nullopt, false, {}};

  if (const json* bj = optional_field(doc, "bounds")) e.bounds = parse_bounds(*bj, root + ".bounds");
  if (overrides.grid) e.bounds.grid = *overrides.grid;
  check_grid(e.bounds.grid, root + ".bounds.grid");
  check_grid(e.bounds.beta_subgrid, root + ".bounds.beta_subgrid");

  const json* simj = optional_field(doc, "simulation");
  if (simj || overrides.seed || overrides.runs || overrides.delta) {
    json sim = simj ? *simj : json::object();
    if (!sim.is_object()) fail(root + ".simulation", "expected an object");
    if (overrides.seed) sim["master_seed"] = *overrides.seed;
    if (overrides.runs) sim["runs"] = *overrides.runs;
    if (overrides.delta) sim["delta"] = *overrides.delta;
    e.simulation = parse_simulation(sim, root + ".simulation", e.scenario, e.seed_generated);
  }
  return e;
}

Experiment load_experiment(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_experiment(doc, overrides);
}

json to_json(const Distribution& d) { return json(std::vector<double>(d.weights().begin(), d.weights().end())); }

json to_json(const Matrix& m) { return json(m.to_rows()); }

json game_to_json(const StageGame& game) {
  json rho = json::array();
  for (const auto& row : game.rho().rows()) rho.push_back(to_json(row));
  return {{"labels",
           {{"long_run", game.labels().long_run},
            {"short_run", game.labels().short_run},
            {"signals", game.labels().signals}}},
          {"u", to_json(game.u())},
          {"v_tilde", to_json(game.v_tilde())},
          {"rho", rho}};
}

json framework_to_json(const Framework& fw, const std::optional<Distribution>& alpha_star) {
  json kernels = json::array();
  for (std::size_t m = 0; m < fw.num_models(); ++m) {
    json per_type = json::array();
    for (PlayerType t : {PlayerType::normal, PlayerType::commitment}) {
      json rows = json::array();
      for (const auto& k : fw.kernels(t, m)) rows.push_back(to_json(k));
      per_type.push_back(rows);
    }
    kernels.push_back(per_type);
  }
  json out = {{"models", fw.model_names()},
              {"kernels", kernels},
              {"prior", to_json(fw.prior())},
              {"commitment_action", to_json(fw.commitment_action())},
              {"normal_correctly_specified", fw.normal_correctly_specified()}};
  if (alpha_star) out["alpha_star"] = to_json(*alpha_star);
  return out;
}

json strategy_to_json(const Strategy& s) {
  if (s.is_stationary()) return to_json(s.at(0));
  json out = json::array();
  for (const auto& d : s.periods()) out.push_back(to_json(d));
  return out;
}

json simulation_to_json(const SimulationConfig& c) {
  json out = {{"delta", c.delta},
              {"horizon", c.horizon},
              {"truncation_tolerance", c.truncation_tolerance},
              {"runs", c.runs},
              {"master_seed", c.master_seed},
              {"true_type", to_string(c.true_type)},
              {"normal_strategy", strategy_to_json(c.normal_strategy)},
              {"threads", c.threads}};
  if (c.slp_conjecture) out["slp_conjecture"] = strategy_to_json(*c.slp_conjecture);
  if (c.alpha_star) out["alpha_star"] = to_json(*c.alpha_star);
  return out;
}

json experiment_to_json(const Experiment& e) {
  json out = {{"game", game_to_json(e.scenario.game)},
              {"framework", framework_to_json(e.scenario.framework, e.scenario.alpha_star)},
              {"bounds", {{"grid", e.bounds.grid}, {"beta_subgrid", e.bounds.beta_subgrid}, {"threads", e.bounds.threads}}}};
  if (e.simulation) out["simulation"] = simulation_to_json(*e.simulation);
  return out;
}

json scenario_document(const Scenario& s) {
  SimulationConfig sim;
  sim.delta = 0.99;
  sim.runs = 100;
  sim.master_seed = 1;
  sim.normal_strategy = Strategy::stationary(s.alpha_star ? *s.alpha_star : s.framework.commitment_action());
  sim.alpha_star = s.alpha_star;
  Experiment e{s, false, sim, false, {}};
  return experiment_to_json(e);
}

}  // namespace misrep::app
