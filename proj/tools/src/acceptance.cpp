#include "misrep_app/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "misrep/belief.hpp"
#include "misrep/divergence.hpp"
#include "misrep/errors.hpp"
#include "misrep/scenarios.hpp"
#include "misrep/score_bounds.hpp"
#include "misrep/simulator.hpp"
#include "misrep_app/config.hpp"
#include "misrep_app/oracles.hpp"

namespace misrep::app {

namespace {

std::string format(const char* fmt, ...) {
  char buf[1024];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

// Accumulates sub-checks into one pass flag and a detail string.
struct Checks {
  bool ok = true;
  std::vector<std::string> parts;

  void add(bool passed, std::string text) {
    ok = ok && passed;
    parts.push_back(passed ? std::move(text) : "!" + text);
  }
  void note(std::string text) { parts.push_back(std::move(text)); }
  std::string joined() const {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : "; ") + p;
    return s;
  }
};

Distribution pure(std::size_t n, std::size_t i) { return Distribution::point_mass(n, i); }

std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t n, double shape = 1.0) {
  std::gamma_distribution<double> g(shape, 1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (double& x : w) s += (x = g(rng));
  for (double& x : w) x /= s;
  return w;
}

// Full-support distribution: a Dirichlet draw mixed with a little uniform mass.
std::vector<double> interior(std::mt19937_64& rng, std::size_t n, double floor_mix = 0.05) {
  auto w = dirichlet(rng, n);
  for (double& x : w) x = (1.0 - floor_mix) * x + floor_mix / static_cast<double>(n);
  return w;
}

SimulationConfig separating_config(std::uint64_t seed, std::size_t threads) {
  SimulationConfig c;
  c.delta = 0.9;
  c.horizon = 400;
  c.runs = 2000;
  c.master_seed = seed;
  c.threads = threads;
  c.true_type = PlayerType::normal;
  // The normal type mimics the commitment action; short-run players know it.
  c.normal_strategy = Strategy::stationary(pure(2, 0));
  return c;
}

// ---------------------------------------------------------------------------

Checks ceiling(const AcceptanceOptions& o) {
  Checks c;
  const KappaOptions ko{1e-3, 1e-2, o.threads};
  const auto start = std::chrono::steady_clock::now();
  const auto main = ci_payoff_set(product_choice(0.9, 0.4, 0.0).game, ko);
  c.add(std::abs(main.hi - 1.8) <= 5e-3, format("hi=%.6f vs 1.8 +-5e-3", main.hi));
  c.add(std::abs(main.lo - 1.0) <= 5e-3, format("lo=%.6f vs 1 +-5e-3", main.lo));
  const std::vector<std::pair<double, double>> sweep = {{0.9, 0.4},  {0.8, 0.2},  {0.7, 0.1},  {0.95, 0.5},
                                                        {0.6, 0.5},  {0.51, 0.5}, {0.85, 0.6}, {0.75, 0.3},
                                                        {0.99, 0.01}, {0.65, 0.35}};
  double worst = 0.0;
  for (const auto& [p, q] : sweep) {
    const auto r = ci_payoff_set(product_choice(p, q, 0.0).game, ko);
    worst = std::max(worst, std::abs(r.hi - oracle::product_choice_ceiling(p, q)));
  }
  c.add(worst <= 5e-3, format("10-point sweep max|hi-closed form|=%.2e <= 5e-3", worst));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.add(secs < 60.0, format("runtime %.2f s < 60 s", secs));
  return c;
}

Checks stackelberg_values(const AcceptanceOptions&) {
  Checks c;
  const auto game = product_choice(0.9, 0.4, 0.0).game;
  const double g = 1e-3;
  const auto mixed = stackelberg(game, g);
  c.add(mixed.value <= 2.5 && mixed.value >= 2.5 - g - 1e-12,
        format("mixed=%.6f in [2.5-%.0e, 2.5] at alpha(a_h)=%.3f", mixed.value, g, mixed.argmax_alpha[0]));
  const auto p = pure_stackelberg(game);
  c.add(p.value == 2.0, format("pure=%.12g == 2", p.value));
  return c;
}

Checks separation_decisions(const AcceptanceOptions&) {
  Checks c;
  {
    const auto s = product_choice(0.6, 0.3, 0.1);
    const auto r = separation_value(s.framework, s.game.rho());
    const double brute =
        oracle::grid_min_1d([](double x) { return oracle::bernoulli_kl(0.3 + 0.3 * x, 0.7); }, 1e-6);
    c.add(std::abs(r.value - brute) <= 1e-5 && std::abs(r.value - 0.0225824) <= 1e-5,
          format("product_choice(0.6,0.3,0.1) sep=%.7f grid=%.7f (+-1e-5)", r.value, brute));
    c.add(!r.per_model_hull[0].member, "hull member=false");
  }
  {
    const auto s = counter_example(0.6, 0.3, 0.05, 0.55);
    const auto r = separation_value(s.framework, s.game.rho());
    const auto as = find_alpha_star(s.framework, s.game.rho());
    const double closed = 0.55 * (1.0 + 0.05 / 0.3);
    c.add(r.value <= 1e-8, format("counter_example sep=%.2e <= 1e-8", r.value));
    c.add(as && std::abs(as->alpha[0] - closed) <= 1e-7 && std::abs(as->alpha[0] - 0.6416667) <= 1e-7,
          format("alpha*(a_h)=%.9f vs 0.6416667 +-1e-7", as ? as->alpha[0] : -1.0));
  }
  {
    bool all_out = true;
    for (double eps : {0.001, 0.02, 0.05}) {
      const auto s = three_signal(0.6, 0.3, 0.1, eps, 0.55);
      all_out = all_out && !separation_value(s.framework, s.game.rho()).any_hull_member();
    }
    const auto s0 = three_signal(0.6, 0.3, 0.1, 0.0, 0.55);
    const auto r0 = separation_value(s0.framework, s0.game.rho());
    c.add(all_out, "three_signal eps>0 member=false");
    c.add(r0.any_hull_member() && r0.value <= 1e-8, format("three_signal eps=0 member=true sep=%.1e", r0.value));
  }
  return c;
}

Checks hull_kl_equivalence(const AcceptanceOptions& o) {
  Checks c;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const std::size_t Y = 3;
  std::size_t agree = 0, cases = 0, skipped = 0, members = 0;
  double worst_gap = 0.0;
  while (cases < 500) {
    const std::size_t A = 2 + cases % 3;
    std::vector<std::vector<double>> rows;
    std::vector<Distribution> dists;
    for (std::size_t a = 0; a < A; ++a) {
      rows.push_back(interior(rng, Y));
      dists.emplace_back(rows.back());
    }
    std::vector<double> q(Y, 0.0);
    const int kind = static_cast<int>(cases % 3);
    if (kind == 0) {
      const auto w = dirichlet(rng, A);
      for (std::size_t a = 0; a < A; ++a)
        for (std::size_t y = 0; y < Y; ++y) q[y] += w[a] * rows[a][y];
    } else if (kind == 1) {
      // Push one coordinate at least 0.01 outside its attainable range.
      const std::size_t y0 = rng() % Y;
      double lo = 1.0, hi = 0.0;
      for (const auto& r : rows) {
        lo = std::min(lo, r[y0]);
        hi = std::max(hi, r[y0]);
      }
      const double room_up = 0.99 - (hi + 0.01), room_down = (lo - 0.01) - 0.01;
      if (room_up <= 0.0 && room_down <= 0.0) continue;
      const bool up = room_down <= 0.0 || (room_up > 0.0 && unif(rng) < 0.5);
      q[y0] = up ? hi + 0.01 + unif(rng) * room_up : lo - 0.01 - unif(rng) * room_down;
      const auto rest = interior(rng, Y - 1);
      for (std::size_t y = 0, k = 0; y < Y; ++y)
        if (y != y0) q[y] = (1.0 - q[y0]) * rest[k++];
    } else {
      q = interior(rng, Y);
    }
    const double brute = oracle::brute_min_kl_attainable(rows, q);
    if (kind == 2 && brute > 1e-9 && brute < 1e-5) {
      ++skipped;
      continue;
    }
    const Distribution qd(q);
    const SignalStructure rho(dists);
    const auto hull = hull_membership(qd, rho);
    const auto fit = min_kl_over_attainable(qd, rho);
    if (hull.member == (fit.value < 1e-7)) ++agree;
    members += hull.member ? 1 : 0;
    worst_gap = std::max(worst_gap, std::abs(fit.value - brute));
    ++cases;
  }
  c.add(agree == cases, format("LP vs min-KL<1e-7 agree %zu/%zu (%zu members)", agree, cases, members));
  c.add(worst_gap <= 1e-6, format("max|min-KL - grid|=%.2e <= 1e-6", worst_gap));
  if (skipped) c.note(format("%zu random targets in the ambiguous band skipped", skipped));
  return c;
}

Checks reputation_decay(const AcceptanceOptions& o) {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  const auto s = product_choice(0.6, 0.3, 0.15);
  const double vsup = s.game.v_tilde_sup_norm();
  auto cfg = separating_config(o.seed, o.threads);
  std::size_t violations = 0, checked = 0;
  const auto mc = monte_carlo(s.game, s.framework, cfg, [&](const TrajectoryRecord& rec) {
    for (std::size_t t = 0; t < rec.length(); ++t, ++checked)
      if (rec.ell[t] > 4.0 * vsup * rec.mu[t] + 1e-12) ++violations;
  });
  const auto fit = decay_rate_fit(mc.mean_mu_curve);
  c.add(fit.slope < -0.01, format("(a) slope=%.5f < -0.01 over t in [%zu,400)", fit.slope, fit.window_begin));

  std::vector<double> avg;
  std::string series;
  for (double delta : {0.9, 0.99, 0.999}) {
    auto sweep = cfg;
    sweep.delta = delta;
    sweep.horizon = 0;
    const auto m = monte_carlo(s.game, s.framework, sweep);
    avg.push_back(m.disc_avg_mu.mean);
    series += format("%s%.4f(T=%zu)", series.empty() ? "" : ",", m.disc_avg_mu.mean, m.horizon);
  }
  c.add(avg[0] > avg[1] && avg[1] > avg[2] && avg[2] < 0.05,
        "(b) disc avg mu " + series + " strictly decreasing, last < 0.05");
  c.add(violations == 0, format("(c) loss bound violated at %zu of %zu periods", violations, checked));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.add(secs < 300.0, format("runtime %.1f s < 300 s", secs));
  return c;
}

Checks attainable_bound(const AcceptanceOptions& o) {
  Checks c;
  const auto start = std::chrono::steady_clock::now();
  const auto s = counter_example(0.6, 0.3, 0.05, 0.55);
  const auto as = find_alpha_star(s.framework, s.game.rho());
  if (!as) {
    c.add(false, "no alpha* found");
    return c;
  }
  const double bound = reputation_lower_bound(s.game, as->alpha);
  SimulationConfig cfg;
  cfg.delta = 0.995;
  cfg.horizon = 2500;
  cfg.runs = 500;
  cfg.master_seed = o.seed;
  cfg.threads = o.threads;
  cfg.normal_strategy = Strategy::stationary(as->alpha);
  cfg.alpha_star = as->alpha;
  std::size_t held = 0, realized_held = 0;
  const auto mc = monte_carlo(s.game, s.framework, cfg, [&](const TrajectoryRecord& rec) {
    const auto cert = discounted_kl_certificate(rec, s.framework, as->alpha, as->model, cfg.delta);
    held += cert.holds ? 1 : 0;
    realized_held += cert.realized_holds ? 1 : 0;
  });
  c.add(mc.payoff.mean >= bound - 0.05,
        format("payoff=%.4f+-%.4f >= %.4f-0.05", mc.payoff.mean, mc.payoff.se, bound));
  c.add(held == cfg.runs, format("certificate holds %zu/%zu", held, cfg.runs));
  c.add(realized_held == cfg.runs, format("path-wise form %zu/%zu", realized_held, cfg.runs));

  // A wrong conjecture: the path-wise form still holds everywhere, the KL form in mean.
  auto wrong = cfg;
  wrong.slp_conjecture = Strategy::stationary(pure(2, 0));
  std::size_t wrong_realized = 0, wrong_kl = 0;
  std::vector<double> lhs;
  double rhs = 0.0;
  monte_carlo(s.game, s.framework, wrong, [&](const TrajectoryRecord& rec) {
    const auto cert = discounted_kl_certificate(rec, s.framework, as->alpha, as->model, cfg.delta);
    wrong_realized += cert.realized_holds ? 1 : 0;
    wrong_kl += cert.holds ? 1 : 0;
    lhs.push_back(cert.lhs);
    rhs = cert.rhs;
  });
  const auto m = mean_and_se(lhs);
  c.add(wrong_realized == wrong.runs && m.mean <= rhs + 3.0 * m.se,
        format("conjecture a_h: path-wise %zu/%zu, KL form mean %.5f+-%.5f <= %.5f (per path %zu/%zu)",
               wrong_realized, wrong.runs, m.mean, m.se, rhs, wrong_kl, wrong.runs));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.add(secs < 300.0, format("runtime %.1f s < 300 s", secs));
  return c;
}

Checks azuma(const AcceptanceOptions& o) {
  Checks c;
  const auto s = product_choice(0.6, 0.3, 0.15);
  const double zeta = separation_value(s.framework, s.game.rho()).value;
  auto cfg = separating_config(o.seed, o.threads);
  const auto d = azuma_diagnostic(s.game, s.framework, cfg, zeta, {0, 25, 50, 100, 200});
  std::string rows;
  bool ok = true;
  for (const auto& r : d.rows) {
    ok = ok && r.empirical_tail <= r.bound + 3.0 * r.standard_error;
    rows += format("%st=%zu:%.3f<=%.3f", rows.empty() ? "" : " ", r.t, r.empirical_tail, r.bound);
  }
  c.add(ok, format("zeta=%.5f K=%.4f c=%.2e; ", zeta, d.k, d.c) + rows + " (+3 se)");
  return c;
}

Checks normal_misspec(const AcceptanceOptions& o) {
  Checks c;
  const auto s = normal_misspec_scenario();
  SimulationConfig cfg;
  cfg.delta = 0.99;
  cfg.horizon = 1000;
  cfg.runs = 200;
  cfg.master_seed = o.seed;
  cfg.threads = o.threads;
  cfg.normal_strategy = Strategy::stationary(pure(2, 0));
  std::size_t converged = 0;
  monte_carlo(s.game, s.framework, cfg, [&](const TrajectoryRecord& rec) {
    if (rec.final_belief.posterior()(0, index_of(PlayerType::commitment)) >= 0.99) ++converged;
  });
  const double frac = static_cast<double>(converged) / static_cast<double>(cfg.runs);
  c.add(frac >= 0.95, format("posterior(commitment, m)>=0.99 at t=1000 in %.1f%% of runs (>=95%%)", 100.0 * frac));

  const auto fit = dc_dn(s.framework, s.game.rho(), pure(2, 0));
  const double dc_oracle = oracle::bernoulli_kl(0.6, 0.58);
  const double dn_oracle =
      oracle::grid_min_1d([](double x) { return oracle::bernoulli_kl(0.6, 0.45 * x + 0.15 * (1.0 - x)); }, 1e-6);
  c.add(std::abs(fit.d_c - dc_oracle) <= 1e-5 && std::abs(fit.d_c - 0.000825) <= 1e-5,
        format("d_C=%.7f grid=%.7f", fit.d_c, dc_oracle));
  c.add(std::abs(fit.d_n - dn_oracle) <= 1e-5 && std::abs(fit.d_n - 0.045228) <= 1e-5,
        format("d_N=%.7f grid=%.7f", fit.d_n, dn_oracle));
  c.add(fit.d_c < fit.d_n, "d_C < d_N");
  return c;
}

Checks perturbations(const AcceptanceOptions& o) {
  Checks c;
  const auto s = product_choice(0.6, 0.3, 0.15);
  const auto& rho = s.game.rho();
  const auto seq = perturbation_sequence(rho, s.framework, 10);
  std::size_t passing = 0;
  double last_distance = 0.0;
  for (const auto& member : seq) {
    passing += normal_favoring_check(member, rho, unperturbed_models(member)) ? 1 : 0;
    last_distance = hausdorff_distance(member, s.framework);
  }
  c.add(passing == seq.size(), format("normal-favoring %zu/%zu (d_H at n=10: %.4f)", passing, seq.size(), last_distance));

  bool rejected = false;
  try {
    perturbation_sequence(rho, s.framework, 1, {3.0, 0.1});
  } catch (const DomainError&) {
    rejected = true;
  }
  c.add(rejected, "oversized shift rejected");

  const Framework& member = seq[2];
  const double r_n = normal_misspecification_radius(member, rho);
  const double vsup = s.game.v_tilde_sup_norm();
  auto cfg = separating_config(o.seed, o.threads);
  std::size_t violations = 0, checked = 0;
  const auto mc = monte_carlo(s.game, member, cfg, [&](const TrajectoryRecord& rec) {
    for (std::size_t t = 0; t < rec.length(); ++t, ++checked)
      if (rec.ell[t] > 4.0 * vsup * (rec.mu[t] + r_n) + 1e-12) ++violations;
  });
  const auto fit = decay_rate_fit(mc.mean_mu_curve);
  c.add(fit.slope < -0.01, format("n=3 (a) slope=%.5f < -0.01", fit.slope));
  c.add(violations == 0, format("n=3 (c) loss bound with r_n=%.3f violated at %zu of %zu periods", r_n, violations,
                                checked));
  return c;
}

// Random framework with M models, A actions, Y signals and a true rho.
struct RandomInstance {
  SignalStructure rho;
  Framework framework;
};

RandomInstance random_instance(std::mt19937_64& rng, std::size_t M, std::size_t A, std::size_t Y) {
  std::vector<Distribution> rho_rows;
  for (std::size_t a = 0; a < A; ++a) rho_rows.emplace_back(interior(rng, Y));
  std::vector<std::string> names;
  std::vector<std::vector<Distribution>> normal, commitment;
  for (std::size_t m = 0; m < M; ++m) {
    names.push_back("m" + std::to_string(m));
    std::vector<Distribution> n, k;
    for (std::size_t a = 0; a < A; ++a) {
      n.emplace_back(interior(rng, Y));
      k.emplace_back(interior(rng, Y));
    }
    normal.push_back(std::move(n));
    commitment.push_back(std::move(k));
  }
  const auto pw = interior(rng, 2 * M);
  Matrix prior(M, kNumTypes);
  for (std::size_t m = 0; m < M; ++m)
    for (std::size_t t = 0; t < kNumTypes; ++t) prior(m, t) = pw[m * kNumTypes + t];
  return {SignalStructure(rho_rows),
          Framework(names, normal, commitment, prior, Distribution(interior(rng, A)), false)};
}

Checks plumbing(const AcceptanceOptions& o) {
  Checks c;
  std::mt19937_64 rng(o.seed + 10);
  std::normal_distribution<double> gauss(0.0, 3.0);

  double martingale_err = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto inst = random_instance(rng, 1 + i % 3, 2 + i % 2, 2 + i % 3);
    const auto& fw = inst.framework;
    BeliefState b = BeliefState::from_prior(fw);
    for (auto& row : b.log_weights)
      for (double& w : row) w += gauss(rng);
    const Distribution conj(interior(rng, fw.num_actions()));
    const Matrix before = b.posterior();
    const Distribution q = predictive(b, fw, conj);
    Matrix avg(before.rows(), before.cols());
    for (std::size_t y = 0; y < fw.num_signals(); ++y) {
      const Matrix after = bayes_step(b, fw, conj, y).posterior();
      for (std::size_t m = 0; m < after.rows(); ++m)
        for (std::size_t t = 0; t < kNumTypes; ++t) avg(m, t) += q[y] * after(m, t);
    }
    for (std::size_t m = 0; m < avg.rows(); ++m)
      for (std::size_t t = 0; t < kNumTypes; ++t) martingale_err = std::max(martingale_err, std::abs(avg(m, t) - before(m, t)));
  }
  c.add(martingale_err <= 1e-10, format("martingale err %.1e <= 1e-10", martingale_err));

  double batch_err = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto inst = random_instance(rng, 1 + i % 3, 2, 2 + i % 2);
    const StageGame game({}, Matrix(2, 2, 0.0), Matrix(2, inst.rho.num_signals(), 0.0), inst.rho);
    SimulationConfig cfg;
    cfg.delta = 0.5;
    cfg.horizon = 200;
    cfg.master_seed = o.seed + static_cast<std::uint64_t>(i);
    cfg.normal_strategy = Strategy::stationary(Distribution(interior(rng, 2)));
    cfg.slp_conjecture = Strategy::stationary(Distribution(interior(rng, 2)));
    const auto rec = simulate_run(game, inst.framework, cfg, 0);
    // Odds from the whole history at once.
    const auto& fw = inst.framework;
    const auto& conj = cfg.slp_conjecture->at(0);
    std::vector<double> lc, ln;
    for (std::size_t m = 0; m < fw.num_models(); ++m) {
      double sc = std::log(fw.prior(PlayerType::commitment, m));
      double sn = std::log(fw.prior(PlayerType::normal, m));
      const Distribution f0 = fw.normal_signal(m, conj);
      for (std::size_t y : rec.y) {
        sc += std::log(fw.commitment_signal(m)[y]);
        sn += std::log(f0[y]);
      }
      lc.push_back(sc);
      ln.push_back(sn);
    }
    auto lse = [](const std::vector<double>& v) {
      const double top = *std::max_element(v.begin(), v.end());
      double s = 0.0;
      for (double x : v) s += std::exp(x - top);
      return top + std::log(s);
    };
    const double batch = lse(lc) - lse(ln);
    batch_err = std::max(batch_err, std::abs(std::expm1(rec.final_belief.log_odds() - batch)));
  }
  c.add(batch_err <= 1e-9, format("batch/recursive odds rel err %.1e <= 1e-9", batch_err));

  std::size_t gibbs = 0, pinsker = 0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + i % 5;
    const Distribution p(dirichlet(rng, n, 0.5)), q(interior(rng, n, 0.01));
    const double d = kl(p, q);
    gibbs += d >= 0.0 ? 1 : 0;
    pinsker += tv(p, q) <= std::sqrt(d / 2.0) + 1e-12 ? 1 : 0;
  }
  c.add(gibbs == 1000 && pinsker == 1000, format("Gibbs %zu/1000, Pinsker %zu/1000", gibbs, pinsker));

  {
    const auto s = product_choice(0.6, 0.3, 0.15);
    auto cfg = separating_config(o.seed, 1);
    cfg.runs = 20;
    cfg.horizon = 200;
    auto csv = [&](std::size_t threads) {
      auto run = cfg;
      run.threads = threads;
      std::ostringstream os;
      write_trajectory_csv_header(os);
      monte_carlo(s.game, s.framework, run, [&](const TrajectoryRecord& r) { write_trajectory_csv(os, r, s.game); });
      return os.str();
    };
    const auto a = csv(1), b = csv(1), t = csv(3);
    c.add(a == b && a == t, format("reruns byte-identical (%zu bytes, 1 vs 3 threads)", a.size()));
  }

  {
    std::size_t identical = 0;
    std::function<bool(const nlohmann::json&, const nlohmann::json&)> same = [&](const nlohmann::json& x,
                                                                                 const nlohmann::json& y) {
      if (x.is_number() && y.is_number()) return std::abs(x.get<double>() - y.get<double>()) <= 1e-15;
      if (x.type() != y.type() || x.size() != y.size()) return false;
      if (x.is_array()) {
        for (std::size_t i = 0; i < x.size(); ++i)
          if (!same(x[i], y[i])) return false;
        return true;
      }
      if (x.is_object()) {
        for (const auto& [k, v] : x.items())
          if (!y.contains(k) || !same(v, y[k])) return false;
        return true;
      }
      return x == y;
    };
    const auto& catalog = scenario_catalog();
    for (const auto& info : catalog) {
      const auto doc = scenario_document(make_scenario(info.name));
      const auto back = experiment_to_json(parse_experiment(nlohmann::json::parse(doc.dump())));
      identical += same(doc, back) ? 1 : 0;
    }
    c.add(identical == catalog.size(), format("config round-trip %zu/%zu scenarios", identical, catalog.size()));
  }
  return c;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Checks(const AcceptanceOptions&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "complete-information ceiling", ceiling},
      {2, "Stackelberg payoffs", stackelberg_values},
      {3, "separation decisions", separation_decisions},
      {4, "hull membership vs min-KL", hull_kl_equivalence},
      {5, "reputation decay (separating)", reputation_decay},
      {6, "reputation bound (attainable commitment)", attainable_bound},
      {7, "Azuma tail diagnostic", azuma},
      {8, "misspecified normal type, d_C < d_N", normal_misspec},
      {9, "normal-favoring perturbations", perturbations},
      {10, "plumbing invariants", plumbing},
  };
  return all;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"bounds", "separation", "decay", "attainable", "azuma",
                                                 "misspec_normal", "perturbation", "plumbing", "all"};
  return names;
}

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> map = {
      {"bounds", {1, 2}},     {"separation", {3, 4}}, {"decay", {5}},      {"attainable", {6}},
      {"azuma", {7}},         {"misspec_normal", {8}},        {"perturbation", {9}},  {"plumbing", {10}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
  };
  return map.at(suite);
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
  for (const auto& c : criteria()) {
    if (c.id != id) continue;
    CriterionResult r;
    r.id = id;
    r.title = c.title;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Checks checks = c.run(options);
      r.passed = checks.ok;
      r.detail = checks.joined();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
  }
  throw std::out_of_range("no acceptance criterion " + std::to_string(id));
}

void print_result(std::ostream& out, const CriterionResult& r) {
  out << (r.passed ? "PASS" : "FAIL") << "  C" << r.id << (r.id < 10 ? "   " : "  ") << r.title << "  " << r.detail
      << "  (" << format("%.2f", r.seconds) << " s)" << std::endl;
}

bool run_suite(const std::string& suite, std::ostream& out, const AcceptanceOptions& options) {
  bool ok = true;
  for (int id : suite_criteria(suite)) {
    const auto r = run_criterion(id, options);
    print_result(out, r);
    ok = ok && r.passed;
  }
  return ok;
}

}  // namespace misrep::app
