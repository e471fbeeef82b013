#include "misrep_app/commands.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "misrep/divergence.hpp"
#include "misrep/score_bounds.hpp"
#include "misrep/simulator.hpp"

namespace misrep::app {

using nlohmann::json;

const char* const kEquilibriumNote =
    "highest and lowest equilibrium payoffs are bracketed (score-program ceiling above, simulated "
    "deviation payoff below), not computed";

namespace {

void emit(std::ostream& out, json report) {
  report["note"] = kEquilibriumNote;
  out << report.dump(2) << '\n';
}

std::optional<Distribution> known_alpha_star(const Experiment& e) {
  if (e.scenario.alpha_star) return e.scenario.alpha_star;
  if (auto as = find_alpha_star(e.scenario.framework, e.scenario.game.rho())) return as->alpha;
  return std::nullopt;
}

json scenario_header(const Experiment& e) {
  json params = json::object();
  for (const auto& [k, v] : e.scenario.parameters) params[k] = v;
  return {{"name", e.scenario.name}, {"params", params}};
}

}  // namespace

int cmd_check_separation(const Experiment& e, std::ostream& out) {
  const auto& fw = e.scenario.framework;
  const auto r = separation_value(fw, e.scenario.game.rho());
  json models = json::array();
  for (std::size_t m = 0; m < fw.num_models(); ++m) {
    const auto& h = r.per_model_hull[m];
    json entry = {{"model", fw.model_names()[m]},
                  {"value", r.per_model_value[m]},
                  {"hull_member", h.member},
                  {"residual", h.residual}};
    if (h.witness) entry["witness"] = to_json(*h.witness);
    if (h.certificate)
      entry["certificate"] = {{"normal", h.certificate->normal},
                              {"offset", h.certificate->offset},
                              {"margin", h.certificate->margin}};
    models.push_back(entry);
  }
  json report = {{"scenario", scenario_header(e)},
                 {"value", r.value},
                 {"separating", r.separating()},
                 {"argmin_alpha", to_json(r.argmin_alpha)},
                 {"argmin_model", fw.model_names()[r.argmin_model]},
                 {"per_model", models},
                 {"routes_agree", r.routes_agree}};
  if (auto as = find_alpha_star(fw, e.scenario.game.rho())) {
    report["alpha_star"] = to_json(as->alpha);
    report["alpha_star_model"] = fw.model_names()[as->model];
  }
  emit(out, report);
  return kOk;
}

int cmd_bounds(const Experiment& e, std::ostream& out) {
  const auto& game = e.scenario.game;
  const KappaOptions ko{e.bounds.grid, e.bounds.beta_subgrid, e.bounds.threads};
  const auto ci = ci_payoff_set(game, ko);
  const auto st = stackelberg(game, e.bounds.grid);
  const auto sp = pure_stackelberg(game);
  json report = {{"scenario", scenario_header(e)},
                 {"W_CI_hi", ci.hi},
                 {"W_CI_lo", ci.lo},
                 {"kappa_plus", ci.kappa_plus},
                 {"kappa_minus", ci.kappa_minus},
                 {"mixed_beta_wins", ci.mixed_beta_flag},
                 {"stackelberg", st.value},
                 {"stackelberg_argmax", to_json(st.argmax_alpha)},
                 {"stackelberg_pure", sp.value},
                 {"grid", {{"requested", e.bounds.grid}, {"realized", ci.grid_resolution}, {"beta_subgrid", e.bounds.beta_subgrid}}}};
  if (auto as = known_alpha_star(e)) {
    report["reputation_bound_if_alpha_star"] = reputation_lower_bound(game, *as);
    report["alpha_star"] = to_json(*as);
  } else {
    report["reputation_bound_if_alpha_star"] = nullptr;
  }
  emit(out, report);
  return kOk;
}

int cmd_stackelberg(const Experiment& e, std::ostream& out) {
  const auto st = stackelberg(e.scenario.game, e.bounds.grid);
  const auto sp = pure_stackelberg(e.scenario.game);
  emit(out, {{"scenario", scenario_header(e)},
             {"stackelberg", st.value},
             {"argmax_alpha", to_json(st.argmax_alpha)},
             {"stackelberg_pure", sp.value},
             {"pure_argmax", to_json(sp.argmax_alpha)},
             {"grid", e.bounds.grid}});
  return kOk;
}

int cmd_simulate(const Experiment& e, const std::string& out_dir, std::ostream& out) {
  if (!e.simulation) throw ConfigError("$.simulation: missing; simulate needs a simulation block");
  const auto& cfg = *e.simulation;
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
  const fs::path csv_path = fs::path(out_dir) / "trajectories.csv";
  std::ofstream csv(csv_path);
  if (!csv) throw IoError("cannot write '" + csv_path.string() + "'");
  write_trajectory_csv_header(csv);
  const auto s = monte_carlo(e.scenario.game, e.scenario.framework, cfg,
                             [&](const TrajectoryRecord& r) { write_trajectory_csv(csv, r, e.scenario.game); });
  csv.close();
  if (!csv) throw IoError("failed writing '" + csv_path.string() + "'");

  const auto fit = decay_rate_fit(s.mean_mu_curve);
  json summary = {{"disc_avg_mu", {{"mean", s.disc_avg_mu.mean}, {"se", s.disc_avg_mu.se}}},
                  {"disc_avg_ell", {{"mean", s.disc_avg_ell.mean}, {"se", s.disc_avg_ell.se}}},
                  {"payoff", {{"mean", s.payoff.mean}, {"se", s.payoff.se}}},
                  {"decay", {{"slope", fit.slope}, {"window", fit.window}}},
                  {"horizon", s.horizon},
                  {"runs", s.runs},
                  {"payoff_truncation_bound", s.payoff_truncation_bound},
                  {"config", experiment_to_json(e)},
                  {"seed", cfg.master_seed},
                  {"seed_generated", e.seed_generated},
                  {"note", kEquilibriumNote}};
  if (!fit.warning.empty()) summary["decay"]["warning"] = fit.warning;
  const fs::path json_path = fs::path(out_dir) / "summary.json";
  std::ofstream js(json_path);
  if (!js) throw IoError("cannot write '" + json_path.string() + "'");
  js << summary.dump(2) << '\n';
  js.close();
  if (!js) throw IoError("failed writing '" + json_path.string() + "'");
  out << summary.dump(2) << '\n';
  return kOk;
}

int cmd_verify(const std::string& suite, const AcceptanceOptions& options, std::ostream& out, std::ostream& err) {
  std::vector<int> ids;
  try {
    ids = suite_criteria(suite);
  } catch (const std::out_of_range&) {
    err << "unknown suite '" << suite << "'; expected one of:";
    for (const auto& n : suite_names()) err << ' ' << n;
    err << '\n';
    return kConfigError;
  }
  bool ok = true;
  for (int id : ids) {
    const auto r = run_criterion(id, options);
    print_result(out, r);
    ok = ok && r.passed;
  }
  out << (ok ? "all criteria passed" : "some criteria FAILED") << " (suite " << suite << ", seed " << options.seed
      << ")\n";
  return ok ? kOk : kVerificationFailed;
}

int cmd_scenario_list(std::ostream& out) {
  json list = json::array();
  for (const auto& s : scenario_catalog()) {
    json params = json::object();
    for (const auto& [k, v] : s.defaults) params[k] = v;
    list.push_back({{"name", s.name}, {"params", params}, {"summary", s.summary}});
  }
  out << list.dump(2) << '\n';
  return kOk;
}

int cmd_scenario_emit(const std::string& name, const std::map<std::string, double>& params, std::ostream& out) {
  out << scenario_document(make_scenario(name, params)).dump(2) << '\n';
  return kOk;
}

}  // namespace misrep::app
