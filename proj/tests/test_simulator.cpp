#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "misrep/divergence.hpp"
#include "misrep/errors.hpp"
#include "misrep/scenarios.hpp"
#include "misrep/simulator.hpp"

using namespace misrep;

namespace {
SimulationConfig base_config(Distribution normal, std::size_t horizon, std::size_t runs,
                             double delta = 0.9) {
  SimulationConfig c;
  c.delta = delta;
  c.horizon = horizon;
  c.truncation_tolerance = std::max(1e-4, std::pow(delta, static_cast<double>(horizon)));
  c.runs = runs;
  c.master_seed = 7;
  c.normal_strategy = Strategy::stationary(std::move(normal));
  c.threads = 1;
  return c;
}
const Distribution kHigh = Distribution::point_mass(2, 0);
const Distribution kLow = Distribution::point_mass(2, 1);
}  // namespace

TEST_CASE("horizon resolution") {
  const auto s = product_choice(0.6, 0.3, 0.1);
  SimulationConfig c;
  c.normal_strategy = Strategy::stationary(kLow);
  c.delta = 0.9;
  CHECK(resolve_horizon(c, s.game) == 88);
  CHECK(std::pow(0.9, 88.0) <= 1e-4);
  c.horizon = 10;
  CHECK_THROWS_AS(resolve_horizon(c, s.game), DomainError);
  c.horizon = 200;
  CHECK(resolve_horizon(c, s.game) == 200);
  c.delta = 1.0;
  CHECK_THROWS_AS(resolve_horizon(c, s.game), DomainError);
}

TEST_CASE("config validation") {
  const auto s = product_choice(0.6, 0.3, 0.1);
  auto c = base_config(kLow, 100, 1);
  c.runs = 0;
  CHECK_THROWS_AS(validate(c, s.game, s.framework), DomainError);
  c.runs = 1;
  c.normal_strategy = Strategy::stationary(Distribution::uniform(3));
  CHECK_THROWS_AS(validate(c, s.game, s.framework), DimensionError);
  c.normal_strategy = Strategy{};
  CHECK_THROWS_AS(validate(c, s.game, s.framework), DomainError);
}

TEST_CASE("scripted strategies repeat their last entry") {
  const auto st = Strategy::scripted({kHigh, kLow});
  CHECK(st.at(0) == kHigh);
  CHECK(st.at(1) == kLow);
  CHECK(st.at(50) == kLow);
  CHECK_FALSE(st.is_stationary());
}

TEST_CASE("canonical kernels with commitment play keep the reputation fixed") {
  const auto s = product_choice(0.6, 0.3, 0.0, 0.4);
  const auto rec = simulate_run(s.game, s.framework, base_config(kHigh, 200, 1), 0);
  for (double mu : rec.mu) CHECK(mu == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("recursive reputation matches the batch odds formula") {
  const auto s = product_choice(0.6, 0.3, 0.15, 0.5);
  for (std::size_t run = 0; run < 5; ++run) {
    const auto rec = simulate_run(s.game, s.framework, base_config(kLow, 200, 1), run);
    double log_odds = 0.0;
    for (std::size_t t = 0; t < rec.length(); ++t) {
      CHECK(rec.mu[t] > 0.0);
      const double fhat = rec.y[t] == 0 ? 0.75 : 0.25;
      const double f0 = rec.y[t] == 0 ? 0.3 : 0.7;
      log_odds += std::log(fhat / f0);
    }
    const double batch = 1.0 / (1.0 + std::exp(-log_odds));
    const double mu_T = rec.final_belief.reputation();
    CHECK(std::abs(mu_T - batch) <= 1e-9 * batch);
    CHECK(rec.final_belief.log_odds() == doctest::Approx(log_odds).epsilon(1e-12));
  }
}

TEST_CASE("per-period loss bound under correct specification") {
  const auto s = product_choice(0.6, 0.3, 0.15);
  const double bound = 4.0 * s.game.v_tilde_sup_norm();
  const auto sum = monte_carlo(s.game, s.framework, base_config(kLow, 300, 50, 0.97),
                               [&](const TrajectoryRecord& rec) {
                                 for (std::size_t t = 0; t < rec.length(); ++t)
                                   CHECK(rec.ell[t] <= bound * rec.mu[t] + 1e-12);
                               });
  CHECK(sum.runs == 50);
  CHECK(sum.mean_mu_curve.size() == 300);
}

TEST_CASE("monte carlo summaries are reproducible and thread independent") {
  const auto s = product_choice(0.6, 0.3, 0.15);
  auto c1 = base_config(kLow, 120, 20);
  auto c3 = c1;
  c3.threads = 3;
  std::ostringstream a, b;
  const auto s1 = monte_carlo(s.game, s.framework, c1, [&](const TrajectoryRecord& r) { write_trajectory_csv(a, r, s.game); });
  const auto s3 = monte_carlo(s.game, s.framework, c3, [&](const TrajectoryRecord& r) { write_trajectory_csv(b, r, s.game); });
  CHECK(a.str() == b.str());
  CHECK(s1.payoff.mean == s3.payoff.mean);
  CHECK(s1.mean_mu_curve == s3.mean_mu_curve);
  auto c_other = c1;
  c_other.master_seed = 8;
  CHECK(monte_carlo(s.game, s.framework, c_other).per_run_payoff != s1.per_run_payoff);
}

TEST_CASE("commitment truth pushes the mean reputation up") {
  const auto s = product_choice(0.6, 0.3, 0.0, 0.3);
  // Canonical kernels but the normal type is conjectured to play a_l.
  auto c = base_config(kLow, 100, 400);
  c.true_type = PlayerType::commitment;
  const auto sum = monte_carlo(s.game, s.framework, c);
  CHECK(sum.mean_mu_curve.back() > sum.mean_mu_curve.front());
  CHECK(sum.mean_mu_curve[50] > sum.mean_mu_curve[0]);
}

TEST_CASE("discount sweep lowers the average reputation") {
  const auto s = product_choice(0.6, 0.3, 0.15);
  double prev = 2.0;
  for (double delta : {0.9, 0.99}) {
    SimulationConfig c;
    c.delta = delta;
    c.runs = 200;
    c.master_seed = 3;
    c.threads = 1;
    c.normal_strategy = Strategy::stationary(kLow);
    const double v = monte_carlo(s.game, s.framework, c).disc_avg_mu.mean;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("mean and standard error") {
  const auto m = mean_and_se({1.0, 2.0, 3.0, 4.0});
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(mean_and_se({2.0}).se == 0.0);
}

TEST_CASE("decay rate fit") {
  std::vector<double> curve(400);
  for (std::size_t t = 0; t < curve.size(); ++t) curve[t] = 0.3 * std::exp(-0.05 * static_cast<double>(t));
  const auto fit = decay_rate_fit(curve);
  CHECK(std::abs(fit.slope - -0.05) <= 1e-10);
  CHECK(fit.intercept == doctest::Approx(std::log(0.3)));
  CHECK(fit.window == 200);
  CHECK(fit.warning.empty());

  const auto flat = decay_rate_fit(std::vector<double>(100, 0.2));
  CHECK(std::abs(flat.slope) <= 1e-14);

  auto holes = curve;
  holes[390] = 0.0;
  const auto shrunk = decay_rate_fit(holes);
  CHECK_FALSE(shrunk.warning.empty());
  CHECK(shrunk.window == 199);
  CHECK(std::abs(shrunk.slope - -0.05) <= 1e-10);
  CHECK_THROWS_AS(decay_rate_fit({1.0}), DomainError);
}

TEST_CASE("discounted kl certificate on the attainable example") {
  const auto s = counter_example(0.6, 0.3, 0.05, 0.55);
  const auto star = find_alpha_star(s.framework, s.game.rho());
  REQUIRE(star);
  auto c = base_config(star->alpha, 600, 1, 0.99);
  c.alpha_star = star->alpha;
  for (std::size_t run = 0; run < 20; ++run) {
    const auto rec = simulate_run(s.game, s.framework, c, run);
    const auto cert = discounted_kl_certificate(rec, s.framework, star->alpha, star->model, c.delta);
    CHECK(cert.holds);
    CHECK(cert.realized_holds);
    CHECK(cert.epsilon <= 1e-12);
    CHECK(cert.rhs == doctest::Approx(-(1.0 - 0.99) * std::log(0.5)));
  }

  // rhs shrinks to epsilon as delta grows.
  double prev = 1.0;
  for (double delta : {0.9, 0.99, 0.999}) {
    auto cd = c;
    cd.delta = delta;
    cd.horizon = 0;
    cd.truncation_tolerance = 1e-2;
    const auto rec = simulate_run(s.game, s.framework, cd, 0);
    const auto cert = discounted_kl_certificate(rec, s.framework, star->alpha, star->model, delta);
    CHECK(cert.rhs < prev);
    CHECK(cert.holds);
    prev = cert.rhs;
  }

  auto wrong = base_config(kLow, 600, 1, 0.99);
  wrong.alpha_star = star->alpha;
  const auto rec = simulate_run(s.game, s.framework, wrong, 0);
  CHECK_THROWS_AS(discounted_kl_certificate(rec, s.framework, star->alpha, star->model, 0.99), DomainError);
}

TEST_CASE("certificate with misspecified normal kernels") {
  const auto s = normal_misspec_scenario();
  auto c = base_config(kHigh, 900, 1, 0.99);
  c.alpha_star = kHigh;
  const double dc = dc_dn(s.framework, s.game.rho(), kHigh).d_c;
  for (std::size_t run = 0; run < 20; ++run) {
    const auto cert = discounted_kl_certificate(simulate_run(s.game, s.framework, c, run), s.framework, kHigh, 0, 0.99);
    CHECK(cert.epsilon == doctest::Approx(dc));
    CHECK(cert.realized_holds);
  }
}

TEST_CASE("azuma diagnostic") {
  const auto s = product_choice(0.6, 0.3, 0.15);
  const double zeta = separation_value(s.framework, s.game.rho()).value;
  auto c = base_config(kLow, 100, 300);
  const auto d = azuma_diagnostic(s.game, s.framework, c, zeta, {0, 25, 50, 100});
  REQUIRE(d.rows.size() == 4);
  CHECK(d.rows[0].t == 0);
  CHECK(d.rows[0].empirical_tail == 1.0);
  CHECK(d.rows[0].bound == 1.0);
  double k = 0.0;
  for (double f0 : {0.6, 0.3}) k = std::max({k, std::abs(std::log(0.75 / f0)), std::abs(std::log(0.25 / (1.0 - f0)))});
  CHECK(d.k == doctest::Approx(k).epsilon(1e-12));
  CHECK(d.c == doctest::Approx(zeta * zeta / (32.0 * d.k * d.k)));
  for (const auto& r : d.rows) CHECK(r.empirical_tail <= r.bound + 3.0 * r.standard_error + 1e-12);

  CHECK_THROWS_AS(azuma_diagnostic(s.game, s.framework, c, 0.0, {10}), DomainError);
  const auto canon = product_choice(0.6, 0.3, 0.0);
  CHECK_THROWS_AS(azuma_diagnostic(canon.game, canon.framework, c, 0.01, {10}), DomainError);
  auto ct = c;
  ct.true_type = PlayerType::commitment;
  CHECK_THROWS_AS(azuma_diagnostic(s.game, s.framework, ct, zeta, {10}), DomainError);
}

TEST_CASE("trajectory csv layout") {
  const auto s = product_choice(0.6, 0.3, 0.15);
  const auto rec = simulate_run(s.game, s.framework, base_config(kLow, 100, 1), 0);
  std::ostringstream out;
  write_trajectory_csv_header(out);
  write_trajectory_csv(out, rec, s.game);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "run,t,y,b,mu,ell,u_flow,tv_gap,kl_term");
  std::getline(in, line);
  CHECK(line.rfind("0,0,y_", 0) == 0);
  CHECK(line.back() == ',');
  std::size_t rows = 1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 100);
}
