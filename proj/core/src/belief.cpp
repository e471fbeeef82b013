#include "misrep/belief.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "misrep/errors.hpp"
#include "misrep/score_bounds.hpp"

namespace misrep {

namespace {

double max_log_weight(const BeliefState& b) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& row : b.log_weights)
    for (double w : row) top = std::max(top, w);
  return top;
}

double log_sum_exp(const std::vector<double>& xs) {
  const double top = *std::max_element(xs.begin(), xs.end());
  double s = 0.0;
  for (double x : xs) s += std::exp(x - top);
  return top + std::log(s);
}

}  // namespace

BeliefState BeliefState::from_prior(const Framework& framework) {
  BeliefState b;
  for (std::size_t t = 0; t < kNumTypes; ++t) {
    b.log_weights[t].resize(framework.num_models());
    for (std::size_t m = 0; m < framework.num_models(); ++m)
      b.log_weights[t][m] = std::log(framework.prior(static_cast<PlayerType>(t), m));
  }
  return b;
}

Matrix BeliefState::posterior() const {
  const std::size_t M = num_models();
  const double top = max_log_weight(*this);
  Matrix out(M, kNumTypes);
  double total = 0.0;
  for (std::size_t t = 0; t < kNumTypes; ++t)
    for (std::size_t m = 0; m < M; ++m) {
      out(m, t) = std::exp(log_weights[t][m] - top);
      total += out(m, t);
    }
  for (std::size_t t = 0; t < kNumTypes; ++t)
    for (std::size_t m = 0; m < M; ++m) out(m, t) /= total;
  return out;
}

double BeliefState::log_odds() const {
  return log_sum_exp(log_weights[index_of(PlayerType::commitment)]) -
         log_sum_exp(log_weights[index_of(PlayerType::normal)]);
}

double BeliefState::reputation() const {
  const double l = log_odds();
  // Logistic evaluated on the side that does not overflow.
  if (l >= 0.0) return 1.0 / (1.0 + std::exp(-l));
  const double e = std::exp(l);
  return e / (1.0 + e);
}

BeliefState bayes_step(const BeliefState& belief, const Framework& framework,
                       const Distribution& conjectured_alpha, std::size_t y) {
  if (y >= framework.num_signals()) throw DimensionError("signal index out of range");
  require_same_size(belief.num_models(), framework.num_models(), "belief vs framework models");
  require_same_size(conjectured_alpha.size(), framework.num_actions(), "conjectured normal action");
  BeliefState next = belief;
  const auto c = index_of(PlayerType::commitment);
  const auto n = index_of(PlayerType::normal);
  for (std::size_t m = 0; m < framework.num_models(); ++m) {
    next.log_weights[c][m] += std::log(framework.commitment_signal(m)[y]);
    double f0 = 0.0;
    for (std::size_t a = 0; a < framework.num_actions(); ++a)
      f0 += conjectured_alpha[a] * framework.kernel(PlayerType::normal, m, a)[y];
    next.log_weights[n][m] += std::log(f0);
  }
  return next;
}

Distribution predictive(const BeliefState& belief, const Framework& framework,
                        const Distribution& conjectured_alpha) {
  require_same_size(belief.num_models(), framework.num_models(), "belief vs framework models");
  require_same_size(conjectured_alpha.size(), framework.num_actions(), "conjectured normal action");
  const Matrix post = belief.posterior();
  const std::size_t Y = framework.num_signals();
  std::vector<double> q(Y, 0.0);
  for (std::size_t m = 0; m < framework.num_models(); ++m) {
    const double wc = post(m, index_of(PlayerType::commitment));
    const double wn = post(m, index_of(PlayerType::normal));
    const auto& fhat = framework.commitment_signal(m);
    for (std::size_t y = 0; y < Y; ++y) q[y] += wc * fhat[y];
    for (std::size_t a = 0; a < framework.num_actions(); ++a) {
      const double w = wn * conjectured_alpha[a];
      if (w == 0.0) continue;
      const auto& k = framework.kernel(PlayerType::normal, m, a);
      for (std::size_t y = 0; y < Y; ++y) q[y] += w * k[y];
    }
  }
  return Distribution(std::move(q));
}

std::size_t slp_action(const StageGame& game, const Distribution& q) {
  return br2(game, q).front();
}

}  // namespace misrep
