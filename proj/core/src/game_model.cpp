#include "misrep/game_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "misrep/errors.hpp"

namespace misrep {

SignalStructure::SignalStructure(std::vector<Distribution> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw DimensionError("signal structure with no actions");
  const std::size_t n = rows_.front().size();
  for (std::size_t a = 0; a < rows_.size(); ++a) {
    require_same_size(rows_[a].size(), n, "signal structure row " + std::to_string(a));
    for (std::size_t y = 0; y < n; ++y) {
      if (!(rows_[a][y] > 0.0)) {
        std::ostringstream os;
        os << "monitoring lacks full support: rho(y=" << y << " | a=" << a << ") = " << rows_[a][y];
        throw ProbabilityError(os.str());
      }
    }
  }
}

StageGame::StageGame(ActionLabels labels, Matrix u, Matrix v_tilde, SignalStructure rho)
    : labels_(std::move(labels)), u_(std::move(u)), v_tilde_(std::move(v_tilde)), rho_(std::move(rho)) {
  require_same_size(u_.rows(), rho_.num_actions(), "u rows vs rho actions");
  require_same_size(v_tilde_.rows(), u_.cols(), "v_tilde rows vs u columns");
  require_same_size(v_tilde_.cols(), rho_.num_signals(), "v_tilde columns vs signals");
  if (u_.rows() == 0 || u_.cols() == 0) throw DimensionError("empty action set");
  auto fill = [](std::vector<std::string>& names, std::size_t n, const char* prefix) {
    if (names.empty()) {
      for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
    }
    require_same_size(names.size(), n, std::string("labels ") + prefix);
  };
  fill(labels_.long_run, u_.rows(), "a");
  fill(labels_.short_run, u_.cols(), "b");
  fill(labels_.signals, rho_.num_signals(), "y");
}

double StageGame::v(std::size_t a, std::size_t b) const {
  double s = 0.0;
  for (std::size_t y = 0; y < num_signals(); ++y) s += rho_(y, a) * v_tilde_(b, y);
  return s;
}

Matrix StageGame::v_matrix() const {
  Matrix out(num_long_run_actions(), num_short_run_actions());
  for (std::size_t a = 0; a < out.rows(); ++a)
    for (std::size_t b = 0; b < out.cols(); ++b) out(a, b) = v(a, b);
  return out;
}

Distribution mix_signal_dist(const SignalStructure& rho, const Distribution& alpha) {
  require_same_size(alpha.size(), rho.num_actions(), "mixed action vs long-run actions");
  return mixture(rho.rows(), alpha.weights());
}

StagePayoffs bilinear_payoffs(const StageGame& game, const Distribution& alpha,
                              const Distribution& beta) {
  require_same_size(alpha.size(), game.num_long_run_actions(), "alpha vs A");
  require_same_size(beta.size(), game.num_short_run_actions(), "beta vs B");
  StagePayoffs out;
  for (std::size_t a = 0; a < alpha.size(); ++a) {
    if (alpha[a] == 0.0) continue;
    for (std::size_t b = 0; b < beta.size(); ++b) {
      if (beta[b] == 0.0) continue;
      out.u += alpha[a] * beta[b] * game.u()(a, b);
      out.v += alpha[a] * beta[b] * game.v(a, b);
    }
  }
  return out;
}

double realized_payoff(const StageGame& game, std::size_t b, const Distribution& q) {
  require_same_size(q.size(), game.num_signals(), "signal distribution vs Y");
  double s = 0.0;
  for (std::size_t y = 0; y < q.size(); ++y) s += q[y] * game.v_tilde()(b, y);
  return s;
}

DiscountedAverage discounted_average(std::span<const double> stream, double delta) {
  if (stream.empty()) throw DomainError("discounted average of an empty stream");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("discount factor must lie in (0, 1)");
  double value = 0.0;
  double weight = 1.0 - delta;
  double sup = 0.0;
  for (double x : stream) {
    value += weight * x;
    weight *= delta;
    sup = std::max(sup, std::abs(x));
  }
  return {value, std::pow(delta, static_cast<double>(stream.size())) * sup};
}

}  // namespace misrep
