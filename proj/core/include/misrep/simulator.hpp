#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "misrep/belief.hpp"
#include "misrep/distribution.hpp"
#include "misrep/framework.hpp"
#include "misrep/game_model.hpp"

namespace misrep {

// Exogenous normal-type play: one mixed action per period. A script shorter
// than the horizon keeps playing its last entry.
class Strategy {
 public:
  Strategy() = default;
  static Strategy stationary(Distribution alpha) { return Strategy({std::move(alpha)}); }
  static Strategy scripted(std::vector<Distribution> periods) { return Strategy(std::move(periods)); }

  bool empty() const { return periods_.empty(); }
  bool is_stationary() const { return periods_.size() == 1; }
  std::size_t length() const { return periods_.size(); }
  const Distribution& at(std::size_t t) const {
    return periods_[t < periods_.size() ? t : periods_.size() - 1];
  }
  const std::vector<Distribution>& periods() const { return periods_; }

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  explicit Strategy(std::vector<Distribution> periods) : periods_(std::move(periods)) {}
  std::vector<Distribution> periods_;
};

struct SimulationConfig {
  double delta = 0.99;
  // 0 derives the shortest horizon meeting the truncation tolerance.
  std::size_t horizon = 0;
  // Fraction of the payoff range the discarded tail may contribute.
  double truncation_tolerance = 1e-4;
  std::size_t runs = 1;
  std::uint64_t master_seed = 0;
  PlayerType true_type = PlayerType::normal;
  Strategy normal_strategy;
  // What the short-lived players assume the normal type plays; defaults to normal_strategy.
  std::optional<Strategy> slp_conjecture;
  // Target of the per-period kl_term column.
  std::optional<Distribution> alpha_star;
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;

  const Strategy& conjecture() const { return slp_conjecture ? *slp_conjecture : normal_strategy; }
};

// Horizon implied by the config; throws DomainError when an explicit horizon
// leaves a tail larger than the tolerance allows.
std::size_t resolve_horizon(const SimulationConfig& config, const StageGame& game);

void validate(const SimulationConfig& config, const StageGame& game, const Framework& framework);

struct TrajectoryRecord {
  std::size_t run = 0;
  std::vector<std::size_t> a;
  std::vector<std::size_t> y;
  std::vector<std::size_t> b;
  // Reputation at the start of each period, before that period's signal.
  std::vector<double> mu;
  std::vector<double> ell;
  std::vector<double> u_flow;
  std::vector<double> tv_gap;
  // Empty unless the config names an alpha_star target.
  std::vector<double> kl_term;
  // ln q_t(y_t).
  std::vector<double> log_q_y;
  std::optional<Distribution> alpha_star;
  // rho_alpha* under the true monitoring, when alpha_star is set.
  std::optional<Distribution> alpha_star_signal;
  // True type normal and normal play stationary at alpha_star.
  bool normal_plays_alpha_star = false;
  // Posterior after the last period.
  BeliefState final_belief;

  std::size_t length() const { return y.size(); }
};

TrajectoryRecord simulate_run(const StageGame& game, const Framework& framework,
                              const SimulationConfig& config, std::size_t run_index);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_and_se(const std::vector<double>& xs);

struct MonteCarloSummary {
  std::size_t runs = 0;
  std::size_t horizon = 0;
  double delta = 0.0;
  MeanSe disc_avg_mu;
  MeanSe disc_avg_ell;
  MeanSe payoff;
  // Largest possible contribution of the truncated payoff tail.
  double payoff_truncation_bound = 0.0;
  std::vector<double> mean_mu_curve;
  std::vector<double> per_run_disc_mu;
  std::vector<double> per_run_disc_ell;
  std::vector<double> per_run_payoff;
};

// Called once per run, in run-index order.
using TrajectoryObserver = std::function<void(const TrajectoryRecord&)>;

MonteCarloSummary monte_carlo(const StageGame& game, const Framework& framework,
                              const SimulationConfig& config, const TrajectoryObserver& observer = {});

struct DecayFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t window_begin = 0;
  std::size_t window = 0;
  // Non-empty when non-positive entries had to be dropped from the window.
  std::string warning;
};

// Least-squares fit of ln curve[t] against t over the trailing fraction of the curve.
DecayFit decay_rate_fit(const std::vector<double>& curve, double trailing_fraction = 0.5);

struct KlCertificate {
  // (1 - delta) sum delta^t D(rho_alpha* || q_t) against -(1 - delta) ln pi(commitment, m*) + eps.
  double lhs = 0.0;
  double rhs = 0.0;
  double epsilon = 0.0;
  bool holds = false;
  // Path-wise version: (1 - delta) sum delta^t ln(f_hat_{m*}(y_t) / q_t(y_t)) against
  // -(1 - delta) ln pi(commitment, m*). Bayes' rule makes this one exact on every path.
  double realized_lhs = 0.0;
  double realized_rhs = 0.0;
  bool realized_holds = false;
};

KlCertificate discounted_kl_certificate(const TrajectoryRecord& trajectory, const Framework& framework,
                                        const Distribution& alpha_star, std::size_t m_star,
                                        double delta);

struct AzumaRow {
  std::size_t t = 0;
  double empirical_tail = 0.0;
  double bound = 0.0;
  // Binomial standard error at the bound.
  double standard_error = 0.0;
};

struct AzumaDiagnostic {
  double zeta = 0.0;
  double k = 0.0;
  double c = 0.0;
  std::size_t runs = 0;
  std::vector<AzumaRow> rows;
};

// K = max |ln f_hat(y, m') - ln f(y | a, normal, m)| over pure actions and models.
double log_likelihood_ratio_bound(const Framework& framework);

// Tail frequency of {sum_{tau<t} Lambda_tau(m, m') >= -zeta t / 2}, maximized over
// model pairs, next to exp(-c t) with c = zeta^2 / (32 K^2).
AzumaDiagnostic azuma_diagnostic(const StageGame& game, const Framework& framework,
                                 const SimulationConfig& config, double zeta,
                                 const std::vector<std::size_t>& sample_times);

void write_trajectory_csv_header(std::ostream& out);
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record, const StageGame& game);

}  // namespace misrep
