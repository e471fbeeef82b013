#include "misrep/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <thread>

#include "misrep/divergence.hpp"
#include "misrep/errors.hpp"
#include "misrep/score_bounds.hpp"

namespace misrep {

namespace {

inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::size_t sample_category(const Distribution& d, double u) {
  double cum = 0.0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] <= 0.0) continue;
    cum += d[i];
    last = i;
    if (u < cum) return i;
  }
  return last;
}

std::mt19937_64 run_engine(std::uint64_t master_seed, std::size_t run_index) {
  const auto r = static_cast<std::uint64_t>(run_index);
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(r >> 32)};
  return std::mt19937_64(seq);
}

void check_strategy(const Strategy& s, std::size_t A, const char* what) {
  if (s.empty()) throw DomainError(std::string(what) + " is empty");
  for (const auto& d : s.periods()) require_same_size(d.size(), A, what);
}

std::size_t resolve_threads(std::size_t requested, std::size_t work) {
  std::size_t n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return std::max<std::size_t>(1, std::min(n, work));
}

TrajectoryRecord run_periods(const StageGame& game, const Framework& framework,
                             const SimulationConfig& config, std::size_t horizon, std::size_t run_index) {
  const auto& rho = game.rho();
  const std::size_t B = game.num_short_run_actions();
  const Strategy& conj = config.conjecture();
  auto eng = run_engine(config.master_seed, run_index);

  TrajectoryRecord rec;
  rec.run = run_index;
  for (auto* v : {&rec.a, &rec.y, &rec.b}) v->reserve(horizon);
  for (auto* v : {&rec.mu, &rec.ell, &rec.u_flow, &rec.tv_gap, &rec.log_q_y}) v->reserve(horizon);
  if (config.alpha_star) {
    rec.alpha_star = config.alpha_star;
    rec.alpha_star_signal = mix_signal_dist(rho, *config.alpha_star);
    rec.kl_term.reserve(horizon);
    rec.normal_plays_alpha_star = config.true_type == PlayerType::normal &&
                                  config.normal_strategy.is_stationary() &&
                                  config.normal_strategy.at(0) == *config.alpha_star;
  }

  BeliefState belief = BeliefState::from_prior(framework);
  for (std::size_t t = 0; t < horizon; ++t) {
    const Distribution& conj_t = conj.at(t);
    const Distribution& normal_t = config.normal_strategy.at(t);
    const Distribution& played =
        config.true_type == PlayerType::commitment ? framework.commitment_action() : normal_t;

    const Distribution q = predictive(belief, framework, conj_t);
    const std::size_t b = slp_action(game, q);
    const std::size_t a = sample_category(played, uniform01(eng));
    const std::size_t y = sample_category(rho.row(a), uniform01(eng));

    rec.a.push_back(a);
    rec.y.push_back(y);
    rec.b.push_back(b);
    rec.mu.push_back(belief.reputation());
    rec.ell.push_back(optimality_loss(game, normal_t, Distribution::point_mass(B, b)));
    rec.u_flow.push_back(game.u()(a, b));
    rec.tv_gap.push_back(tv(q, mix_signal_dist(rho, played)));
    if (rec.alpha_star_signal) rec.kl_term.push_back(kl(*rec.alpha_star_signal, q));
    rec.log_q_y.push_back(std::log(q[y]));

    belief = bayes_step(belief, framework, conj_t, y);
  }
  rec.final_belief = std::move(belief);
  return rec;
}

// Runs every run index, handing trajectories to `sink` in run order.
void for_each_run(const StageGame& game, const Framework& framework, const SimulationConfig& config,
                  std::size_t horizon, const TrajectoryObserver& sink) {
  const std::size_t nthreads = resolve_threads(config.threads, config.runs);
  if (nthreads == 1) {
    for (std::size_t r = 0; r < config.runs; ++r) sink(run_periods(game, framework, config, horizon, r));
    return;
  }
  const std::size_t batch = nthreads * 4;
  std::vector<TrajectoryRecord> records;
  for (std::size_t start = 0; start < config.runs; start += batch) {
    const std::size_t count = std::min(batch, config.runs - start);
    records.assign(count, TrajectoryRecord{});
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nthreads; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < count; i += nthreads)
          records[i] = run_periods(game, framework, config, horizon, start + i);
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& rec : records) sink(rec);
  }
}

}  // namespace

std::size_t resolve_horizon(const SimulationConfig& config, const StageGame& game) {
  if (!(config.delta > 0.0 && config.delta < 1.0)) throw DomainError("discount factor must lie in (0, 1)");
  if (!(config.truncation_tolerance > 0.0 && config.truncation_tolerance < 1.0))
    throw DomainError("truncation tolerance must lie in (0, 1)");
  const double range = game.u_max() - game.u_min();
  if (config.horizon == 0) {
    const double h = std::ceil(std::log(config.truncation_tolerance) / std::log(config.delta));
    return std::max<std::size_t>(1, static_cast<std::size_t>(h));
  }
  const double tail = std::pow(config.delta, static_cast<double>(config.horizon));
  if (range > 0.0 && tail > config.truncation_tolerance * (1.0 + 1e-12)) {
    throw DomainError("horizon " + std::to_string(config.horizon) + " leaves a discounted tail of " +
                      std::to_string(tail) + " of the payoff range, above the truncation tolerance " +
                      std::to_string(config.truncation_tolerance));
  }
  return config.horizon;
}

void validate(const SimulationConfig& config, const StageGame& game, const Framework& framework) {
  framework.check_against(game.rho());
  if (config.runs == 0) throw DomainError("simulation needs at least one run");
  const std::size_t A = game.num_long_run_actions();
  check_strategy(config.normal_strategy, A, "normal strategy");
  if (config.slp_conjecture) check_strategy(*config.slp_conjecture, A, "short-run conjecture");
  if (config.alpha_star) require_same_size(config.alpha_star->size(), A, "alpha_star");
  resolve_horizon(config, game);
}

TrajectoryRecord simulate_run(const StageGame& game, const Framework& framework,
                              const SimulationConfig& config, std::size_t run_index) {
  validate(config, game, framework);
  return run_periods(game, framework, config, resolve_horizon(config, game), run_index);
}

MeanSe mean_and_se(const std::vector<double>& xs) {
  if (xs.empty()) return {};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double n = static_cast<double>(xs.size());
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

MonteCarloSummary monte_carlo(const StageGame& game, const Framework& framework,
                              const SimulationConfig& config, const TrajectoryObserver& observer) {
  validate(config, game, framework);
  const std::size_t horizon = resolve_horizon(config, game);
  MonteCarloSummary s;
  s.runs = config.runs;
  s.horizon = horizon;
  s.delta = config.delta;
  s.mean_mu_curve.assign(horizon, 0.0);
  for_each_run(game, framework, config, horizon, [&](const TrajectoryRecord& rec) {
    s.per_run_disc_mu.push_back(discounted_average(rec.mu, config.delta).value);
    s.per_run_disc_ell.push_back(discounted_average(rec.ell, config.delta).value);
    const auto pay = discounted_average(rec.u_flow, config.delta);
    s.per_run_payoff.push_back(pay.value);
    s.payoff_truncation_bound = std::max(s.payoff_truncation_bound, pay.truncation_bound);
    for (std::size_t t = 0; t < horizon; ++t) s.mean_mu_curve[t] += rec.mu[t];
    if (observer) observer(rec);
  });
  for (double& m : s.mean_mu_curve) m /= static_cast<double>(config.runs);
  s.disc_avg_mu = mean_and_se(s.per_run_disc_mu);
  s.disc_avg_ell = mean_and_se(s.per_run_disc_ell);
  s.payoff = mean_and_se(s.per_run_payoff);
  return s;
}

DecayFit decay_rate_fit(const std::vector<double>& curve, double trailing_fraction) {
  if (curve.size() < 2) throw DomainError("decay fit needs at least two points");
  if (!(trailing_fraction > 0.0 && trailing_fraction <= 1.0))
    throw DomainError("trailing fraction must lie in (0, 1]");
  const std::size_t n = curve.size();
  const std::size_t window = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(trailing_fraction * static_cast<double>(n))), 2, n);
  DecayFit fit;
  fit.window_begin = n - window;
  std::vector<double> ts;
  std::vector<double> ls;
  for (std::size_t t = fit.window_begin; t < n; ++t) {
    if (!(curve[t] > 0.0)) continue;
    ts.push_back(static_cast<double>(t));
    ls.push_back(std::log(curve[t]));
  }
  if (ts.size() < 2) throw DomainError("decay fit window has fewer than two positive entries");
  if (ts.size() < window) {
    fit.warning = "dropped " + std::to_string(window - ts.size()) +
                  " non-positive entries from the fit window";
  }
  fit.window = ts.size();
  const double k = static_cast<double>(ts.size());
  double tbar = 0.0;
  double lbar = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tbar += ts[i];
    lbar += ls[i];
  }
  tbar /= k;
  lbar /= k;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sxy += (ts[i] - tbar) * (ls[i] - lbar);
    sxx += (ts[i] - tbar) * (ts[i] - tbar);
  }
  fit.slope = sxy / sxx;
  fit.intercept = lbar - fit.slope * tbar;
  return fit;
}

KlCertificate discounted_kl_certificate(const TrajectoryRecord& trajectory, const Framework& framework,
                                        const Distribution& alpha_star, std::size_t m_star,
                                        double delta) {
  if (!trajectory.alpha_star || !trajectory.normal_plays_alpha_star ||
      !(*trajectory.alpha_star == alpha_star)) {
    throw DomainError("certificate needs a trajectory where the normal type persistently plays alpha_star");
  }
  if (m_star >= framework.num_models()) throw DimensionError("model index out of range");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("discount factor must lie in (0, 1)");
  const Distribution& fhat = framework.commitment_signal(m_star);
  const double log_p0 = std::log(framework.prior(PlayerType::commitment, m_star));

  KlCertificate c;
  c.epsilon = kl(*trajectory.alpha_star_signal, fhat);
  c.lhs = discounted_average(trajectory.kl_term, delta).value;
  c.rhs = -(1.0 - delta) * log_p0 + c.epsilon;
  c.holds = c.lhs <= c.rhs + 1e-9;

  std::vector<double> increments(trajectory.length());
  for (std::size_t t = 0; t < trajectory.length(); ++t)
    increments[t] = std::log(fhat[trajectory.y[t]]) - trajectory.log_q_y[t];
  c.realized_lhs = discounted_average(increments, delta).value;
  c.realized_rhs = -(1.0 - delta) * log_p0;
  c.realized_holds = c.realized_lhs <= c.realized_rhs + 1e-9;
  return c;
}

double log_likelihood_ratio_bound(const Framework& framework) {
  double k = 0.0;
  for (std::size_t mc = 0; mc < framework.num_models(); ++mc) {
    const auto& fhat = framework.commitment_signal(mc);
    for (std::size_t mn = 0; mn < framework.num_models(); ++mn)
      for (std::size_t a = 0; a < framework.num_actions(); ++a) {
        const auto& f0 = framework.kernel(PlayerType::normal, mn, a);
        for (std::size_t y = 0; y < f0.size(); ++y)
          k = std::max(k, std::abs(std::log(fhat[y]) - std::log(f0[y])));
      }
  }
  return k;
}

AzumaDiagnostic azuma_diagnostic(const StageGame& game, const Framework& framework,
                                 const SimulationConfig& config, double zeta,
                                 const std::vector<std::size_t>& sample_times) {
  if (!(zeta > 0.0)) throw DomainError("separation zeta must be positive");
  if (config.true_type != PlayerType::normal) throw DomainError("tail diagnostic assumes the normal type");
  if (!separation_value(framework, game.rho()).separating())
    throw DomainError("tail diagnostic needs a commitment-separating framework");
  if (config.runs == 0) throw DomainError("simulation needs at least one run");
  check_strategy(config.normal_strategy, game.num_long_run_actions(), "normal strategy");
  if (config.slp_conjecture)
    check_strategy(*config.slp_conjecture, game.num_long_run_actions(), "short-run conjecture");

  AzumaDiagnostic d;
  d.zeta = zeta;
  d.k = log_likelihood_ratio_bound(framework);
  d.c = zeta * zeta / (32.0 * d.k * d.k);
  d.runs = config.runs;
  std::vector<std::size_t> times = sample_times;
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  const std::size_t horizon = times.empty() ? 0 : times.back();
  const std::size_t M = framework.num_models();
  // hits[i][pair] counts runs where the partial sum at times[i] clears the threshold.
  std::vector<std::vector<std::size_t>> hits(times.size(), std::vector<std::size_t>(M * M, 0));
  const Strategy& conj = config.conjecture();

  auto count = [&](const TrajectoryRecord& rec) {
    std::vector<double> sums(M * M, 0.0);
    std::size_t next = 0;
    for (std::size_t t = 0; t <= horizon && next < times.size(); ++t) {
      while (next < times.size() && times[next] == t) {
        const double threshold = -zeta * static_cast<double>(t) / 2.0;
        for (std::size_t p = 0; p < M * M; ++p)
          if (sums[p] >= threshold) ++hits[next][p];
        ++next;
      }
      if (t == horizon) break;
      const std::size_t y = rec.y[t];
      for (std::size_t mn = 0; mn < M; ++mn) {
        const double f0 = framework.normal_signal(mn, conj.at(t))[y];
        for (std::size_t mc = 0; mc < M; ++mc)
          sums[mn * M + mc] += std::log(framework.commitment_signal(mc)[y] / f0);
      }
    }
  };
  for_each_run(game, framework, config, horizon, count);

  const double n = static_cast<double>(config.runs);
  for (std::size_t i = 0; i < times.size(); ++i) {
    AzumaRow row;
    row.t = times[i];
    row.empirical_tail = static_cast<double>(*std::max_element(hits[i].begin(), hits[i].end())) / n;
    row.bound = std::exp(-d.c * static_cast<double>(times[i]));
    row.standard_error = std::sqrt(row.bound * (1.0 - row.bound) / n);
    d.rows.push_back(row);
  }
  return d;
}

void write_trajectory_csv_header(std::ostream& out) {
  out << "run,t,y,b,mu,ell,u_flow,tv_gap,kl_term\n";
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record, const StageGame& game) {
  const auto& labels = game.labels();
  const auto old = out.precision(17);
  for (std::size_t t = 0; t < record.length(); ++t) {
    out << record.run << ',' << t << ',' << labels.signals[record.y[t]] << ','
        << labels.short_run[record.b[t]] << ',' << record.mu[t] << ',' << record.ell[t] << ','
        << record.u_flow[t] << ',' << record.tv_gap[t] << ',';
    if (!record.kl_term.empty()) out << record.kl_term[t];
    out << '\n';
  }
  out.precision(old);
}

}  // namespace misrep
