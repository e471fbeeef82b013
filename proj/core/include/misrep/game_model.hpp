#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "misrep/distribution.hpp"

namespace misrep {

// Monitoring kernel rho(. | a): one full-support distribution over signals per
// long-lived action.
class SignalStructure {
 public:
  SignalStructure() = default;
  explicit SignalStructure(std::vector<Distribution> rows);

  std::size_t num_actions() const { return rows_.size(); }
  std::size_t num_signals() const { return rows_.empty() ? 0 : rows_.front().size(); }
  const Distribution& row(std::size_t a) const { return rows_.at(a); }
  std::span<const Distribution> rows() const { return rows_; }
  double operator()(std::size_t y, std::size_t a) const { return rows_[a][y]; }

 private:
  std::vector<Distribution> rows_;
};

struct ActionLabels {
  std::vector<std::string> long_run;   // A
  std::vector<std::string> short_run;  // B
  std::vector<std::string> signals;    // Y
};

// Stage game with imperfect public monitoring. The short-lived player's
// realized payoff v_tilde(b, y) is the primitive; her ex ante payoff
// v(a, b) = sum_y rho(y|a) v_tilde(b, y) is always recomputed from it.
class StageGame {
 public:
  StageGame(ActionLabels labels, Matrix u, Matrix v_tilde, SignalStructure rho);

  const ActionLabels& labels() const { return labels_; }
  std::size_t num_long_run_actions() const { return u_.rows(); }
  std::size_t num_short_run_actions() const { return u_.cols(); }
  std::size_t num_signals() const { return v_tilde_.cols(); }

  const Matrix& u() const { return u_; }
  const Matrix& v_tilde() const { return v_tilde_; }
  const SignalStructure& rho() const { return rho_; }

  double v(std::size_t a, std::size_t b) const;
  Matrix v_matrix() const;
  // Max absolute entry of v_tilde.
  double v_tilde_sup_norm() const { return v_tilde_.max_abs(); }
  double u_min() const { return u_.min(); }
  double u_max() const { return u_.max(); }

 private:
  ActionLabels labels_;
  Matrix u_;
  Matrix v_tilde_;
  SignalStructure rho_;
};

// rho_alpha(y) = sum_a alpha(a) rho(y|a).
Distribution mix_signal_dist(const SignalStructure& rho, const Distribution& alpha);

struct StagePayoffs {
  double u = 0.0;
  double v = 0.0;
};

StagePayoffs bilinear_payoffs(const StageGame& game, const Distribution& alpha,
                              const Distribution& beta);

// Expected realized payoff sum_y q(y) v_tilde(b, y) of short-run action b.
double realized_payoff(const StageGame& game, std::size_t b, const Distribution& q);

struct DiscountedAverage {
  double value = 0.0;
  // delta^(T+1) * max_t |u_t|: the most the unobserved tail could add if it
  // stayed inside the observed range.
  double truncation_bound = 0.0;
};

// (1 - delta) sum_{t=0}^{T} delta^t u_t for a finite stream of length T+1.
DiscountedAverage discounted_average(std::span<const double> stream, double delta);

}  // namespace misrep
