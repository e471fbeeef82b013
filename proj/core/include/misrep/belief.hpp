#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "misrep/distribution.hpp"
#include "misrep/framework.hpp"
#include "misrep/game_model.hpp"

namespace misrep {

// Short-lived players' joint posterior over (type, model), kept as
// unnormalized log weights. Normalization happens only on read-out.
struct BeliefState {
  // log_weights[type][m]
  std::array<std::vector<double>, kNumTypes> log_weights;

  static BeliefState from_prior(const Framework& framework);

  std::size_t num_models() const { return log_weights[0].size(); }
  // rows = models, cols = types, summing to one.
  Matrix posterior() const;
  // Posterior mass on the commitment type.
  double reputation() const;
  // ln(mu / (1 - mu)), accurate where mu itself rounds to 0 or 1.
  double log_odds() const;
};

// Adds ln f(y | alpha_hat, commitment, m) and ln sum_a alpha(a) f(y | a, normal, m)
// to the corresponding log weights.
BeliefState bayes_step(const BeliefState& belief, const Framework& framework,
                       const Distribution& conjectured_alpha, std::size_t y);

// Posterior mixture of the per-(type, model) signal distributions.
Distribution predictive(const BeliefState& belief, const Framework& framework,
                        const Distribution& conjectured_alpha);

// First element of br2(game, q) in declared order.
std::size_t slp_action(const StageGame& game, const Distribution& q);

}  // namespace misrep
