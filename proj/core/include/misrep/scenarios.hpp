#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "misrep/distribution.hpp"
#include "misrep/framework.hpp"
#include "misrep/game_model.hpp"

namespace misrep {

struct Scenario {
  std::string name;
  // Constructor arguments in declaration order.
  std::vector<std::pair<std::string, double>> parameters;
  StageGame game;
  Framework framework;
  // Action whose signal distribution the commitment explanation matches, when known.
  std::optional<Distribution> alpha_star;
};

// Short-run realized payoffs v_tilde with sum_y rho(y|a) v_tilde(b, y) = v(a, b).
// Minimum-norm solution when there are more signals than actions.
Matrix lift_short_run_payoffs(const SignalStructure& rho, const Matrix& v);

// Two-action, two-signal product-choice game; the commitment type plays a_h
// and is believed to produce y_h with probability p + epsilon.
Scenario product_choice(double p, double q, double epsilon, double mu0 = 0.5);

// Three signals with an uninformative y_u; the commitment type mixes
// x on a_h and is believed to produce y_u with probability r + epsilon.
Scenario three_signal(double p, double q, double r, double epsilon, double x, double mu0 = 0.5);

// Commitment misspecified only at a_h; its signal distribution is attainable
// at alpha*(a_h) = x (1 + epsilon / (p - q)).
Scenario counter_example(double p, double q, double epsilon, double x, double mu0 = 0.5);

// Misspecified normal kernels (0.45 / 0.15 on y_h) next to a commitment
// explanation Bern(0.58) under true Bern(0.6) / Bern(0.3) monitoring.
Scenario normal_misspec_scenario(double mu0 = 0.5);

struct PerturbationOptions {
  // Shift magnitude at step n is shift_scale / (n + 2).
  double shift_scale = 1.0;
  // Prior mass, conditional on each type, kept on the unperturbed models.
  double kappa = 0.1;
};

// For n = 1..n_max: every base model is kept unperturbed (the normal-favoring
// subset, mass kappa given each type) next to a copy whose normal kernels are
// moved by s = shift_scale / (n + 2) toward a point mass on the last signal.
// Throws DomainError when a member breaks the normal-favoring inequality or
// its kernels lose full support.
std::vector<Framework> perturbation_sequence(const SignalStructure& rho, const Framework& base,
                                             std::size_t n_max, const PerturbationOptions& options = {});

// The unperturbed models of a perturbation_sequence member.
std::vector<std::size_t> unperturbed_models(const Framework& member);

// max over alpha and m of tv(f(. | alpha, normal, m), rho_alpha); attained at a pure action.
double normal_misspecification_radius(const Framework& framework, const SignalStructure& rho);

struct ScenarioInfo {
  std::string name;
  std::vector<std::pair<std::string, double>> defaults;
  std::string summary;
};

const std::vector<ScenarioInfo>& scenario_catalog();

// Builds a catalog scenario, overriding defaults by name. Throws DomainError on an
// unknown scenario or parameter.
Scenario make_scenario(const std::string& name, const std::map<std::string, double>& overrides = {});

}  // namespace misrep
