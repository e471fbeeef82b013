#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "misrep/divergence.hpp"
#include "misrep/errors.hpp"
#include "misrep/scenarios.hpp"
#include "misrep_app/oracles.hpp"

using namespace misrep;

namespace {
Distribution bern(double p) { return Distribution({p, 1.0 - p}); }

std::vector<double> as_vec(const Distribution& d) { return {d.weights().begin(), d.weights().end()}; }

Distribution random_dist(std::mt19937_64& rng, std::size_t n, double floor = 0.0) {
  std::gamma_distribution<double> g(1.0, 1.0);
  std::vector<double> w(n);
  double s = 0.0;
  for (auto& x : w) s += (x = g(rng));
  for (auto& x : w) x = floor + (1.0 - floor * static_cast<double>(n)) * x / s;
  double t = 0.0;
  for (auto x : w) t += x;
  for (auto& x : w) x /= t;
  return Distribution(w);
}

SignalStructure random_rho(std::mt19937_64& rng, std::size_t actions, std::size_t signals) {
  std::vector<Distribution> rows;
  for (std::size_t a = 0; a < actions; ++a) rows.push_back(random_dist(rng, signals, 0.02));
  return SignalStructure(rows);
}
}  // namespace

TEST_CASE("kl values") {
  CHECK(kl(bern(0.6), bern(0.6)) == 0.0);
  CHECK(kl(bern(0.6), bern(0.7)) == doctest::Approx(0.0225824).epsilon(1e-6));
  CHECK(kl(bern(0.6), bern(0.7)) == doctest::Approx(0.6 * std::log(6.0 / 7.0) + 0.4 * std::log(4.0 / 3.0)));
  CHECK(kl(bern(0.5), bern(0.9)) == doctest::Approx(0.5108256).epsilon(1e-6));
  // 0 ln 0 = 0.
  CHECK(kl(bern(1.0), bern(0.6)) == doctest::Approx(-std::log(0.6)));
  CHECK_THROWS_AS(kl(bern(0.5), bern(1.0)), DomainError);
  CHECK_THROWS_AS(kl(bern(0.5), Distribution::uniform(3)), DimensionError);
}

TEST_CASE("tv values") {
  CHECK(tv(bern(0.3), bern(0.3)) == 0.0);
  CHECK(tv(bern(0.6), bern(0.7)) == doctest::Approx(0.1));
  CHECK(tv(bern(1.0), bern(0.0)) == doctest::Approx(1.0));
}

TEST_CASE("gibbs and pinsker on random pairs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 4);
    const auto p = random_dist(rng, n, 1e-3);
    const auto q = random_dist(rng, n, 1e-3);
    const double d = kl(p, q);
    CHECK(d >= 0.0);
    CHECK(d >= 2.0 * tv(p, q) * tv(p, q) - 1e-15);
    CHECK(std::abs(d - oracle::kl(as_vec(p), as_vec(q))) <= 1e-12);
    CHECK(kl(p, p) <= 1e-12);
  }
}

TEST_CASE("hull membership on the product-choice monitoring") {
  const SignalStructure rho({bern(0.6), bern(0.3)});
  const auto vertex = hull_membership(bern(0.6), rho);
  CHECK(vertex.member);
  REQUIRE(vertex.witness);
  CHECK((*vertex.witness)[0] == doctest::Approx(1.0).epsilon(1e-9));

  const auto inside = hull_membership(bern(0.45), rho);
  CHECK(inside.member);
  REQUIRE(inside.witness);
  CHECK((*inside.witness)[0] == doctest::Approx(0.5).epsilon(1e-9));

  const auto outside = hull_membership(bern(0.7), rho);
  CHECK_FALSE(outside.member);
  CHECK(outside.residual > 0.0);
  REQUIRE(outside.certificate);
  // The certificate separates 0.7 from both rows.
  const auto& h = *outside.certificate;
  CHECK(h.margin > 0.0);
  for (const auto& row : rho.rows()) {
    double s = 0.0;
    for (std::size_t y = 0; y < 2; ++y) s += h.normal[y] * row[y];
    CHECK(s <= h.offset + 1e-9);
  }
  CHECK(h.normal[0] * 0.7 + h.normal[1] * 0.3 == doctest::Approx(h.offset + h.margin));
}

TEST_CASE("hull membership with an uninformative signal mass mismatch") {
  const auto s = three_signal(0.6, 0.3, 0.1, 0.02, 0.55);
  CHECK_FALSE(hull_membership(s.framework.commitment_signal(0), s.game.rho()).member);
  const auto s0 = three_signal(0.6, 0.3, 0.1, 0.0, 0.55);
  CHECK(hull_membership(s0.framework.commitment_signal(0), s0.game.rho()).member);
}

TEST_CASE("min kl over the attainable set") {
  const SignalStructure rho({bern(0.6), bern(0.3)});
  const auto out = min_kl_over_attainable(bern(0.7), rho);
  CHECK(out.converged);
  double arg = 0.0;
  const double grid = oracle::grid_min_1d([](double x) { return oracle::bernoulli_kl(0.3 + 0.3 * x, 0.7); },
                                          1e-6, &arg);
  CHECK(std::abs(out.value - grid) <= 1e-9);
  CHECK(out.value == doctest::Approx(0.0225824).epsilon(1e-6));
  CHECK(out.argmin[0] == doctest::Approx(1.0));
  CHECK(arg == doctest::Approx(1.0));

  const auto mid = min_kl_over_attainable(bern(0.45), rho);
  CHECK(mid.value <= 1e-10);
  CHECK(mid.argmin[0] == doctest::Approx(0.5).epsilon(1e-4));

  // A member reproduces itself.
  const auto r = mix_signal_dist(rho, Distribution({0.2, 0.8}));
  const auto self = min_kl_over_attainable(r, rho);
  CHECK(self.value <= 1e-10);
  CHECK(tv(mix_signal_dist(rho, self.argmin), r) <= 1e-5);
}

TEST_CASE("min kl to a mixture of kernels") {
  const std::vector<Distribution> kernels{bern(0.45), bern(0.15)};
  // Target inside the segment.
  CHECK(min_kl_to_mixture(bern(0.3), kernels).value <= 1e-10);
  const auto out = min_kl_to_mixture(bern(0.6), kernels);
  CHECK(out.value == doctest::Approx(oracle::bernoulli_kl(0.6, 0.45)).epsilon(1e-9));
  CHECK(out.argmin[0] == doctest::Approx(1.0));
}

TEST_CASE("prop-1 equivalence on random three-signal instances") {
  std::mt19937_64 rng(2024);
  int agree = 0;
  const int n = 200;
  for (int i = 0; i < n; ++i) {
    const std::size_t actions = 2 + static_cast<std::size_t>(i % 2);
    const auto rho = random_rho(rng, actions, 3);
    Distribution q;
    if (i % 3 == 0) {
      q = mix_signal_dist(rho, random_dist(rng, actions));
    } else {
      q = random_dist(rng, 3, 0.02);
    }
    const auto hull = hull_membership(q, rho);
    const auto fit = min_kl_over_attainable(q, rho);
    if (hull.member == (fit.value < 1e-7)) ++agree;
    std::vector<std::vector<double>> rows;
    for (const auto& r : rho.rows()) rows.push_back(as_vec(r));
    CHECK(std::abs(fit.value - oracle::brute_min_kl_attainable(rows, as_vec(q))) <= 1e-6);
  }
  CHECK(agree == n);
}

TEST_CASE("separation value on the catalog") {
  // Canonical framework.
  const auto canon = product_choice(0.6, 0.3, 0.0);
  const auto c = separation_value(canon.framework, canon.game.rho());
  CHECK(c.value <= 1e-10);
  CHECK_FALSE(c.separating());

  const auto pc = product_choice(0.6, 0.3, 0.1);
  const auto r = separation_value(pc.framework, pc.game.rho());
  CHECK(r.value == doctest::Approx(0.0225824).epsilon(1e-6));
  CHECK(std::abs(r.value - oracle::bernoulli_kl(0.6, 0.7)) <= 1e-9);
  CHECK(r.argmin_model == 0);
  CHECK(r.separating());
  CHECK(r.routes_agree);

  const auto ce = counter_example(0.6, 0.3, 0.05, 0.55);
  const auto e = separation_value(ce.framework, ce.game.rho());
  CHECK(e.value <= 1e-8);
  CHECK_FALSE(e.separating());

  // The three-signal target is outside the hull at any positive epsilon.
  const auto ts = three_signal(0.6, 0.3, 0.1, 0.02, 0.55);
  const auto t = separation_value(ts.framework, ts.game.rho());
  CHECK(t.separating());
  CHECK(t.value > 0.0);
  std::vector<std::vector<double>> rows;
  for (const auto& row : ts.game.rho().rows()) rows.push_back(as_vec(row));
  CHECK(std::abs(t.value - oracle::brute_min_kl_attainable(rows, as_vec(ts.framework.commitment_signal(0)))) <=
        1e-6);
}

TEST_CASE("separation is decided by the lp when the kl value is tiny") {
  const auto ts = three_signal(0.6, 0.3, 0.1, 1e-6, 0.55);
  const auto t = separation_value(ts.framework, ts.game.rho());
  CHECK(t.value < 1e-7);
  CHECK(t.separating());
  CHECK_FALSE(t.routes_agree);
}

TEST_CASE("find_alpha_star") {
  const auto ce = counter_example(0.6, 0.3, 0.05, 0.55);
  const auto star = find_alpha_star(ce.framework, ce.game.rho());
  REQUIRE(star);
  const double x_eps = 0.55 * (1.0 + 0.05 / 0.3);
  CHECK(std::abs(star->alpha[0] - x_eps) <= 1e-7);
  CHECK(star->alpha[0] == doctest::Approx(0.6416667).epsilon(1e-6));
  const auto sig = mix_signal_dist(ce.game.rho(), star->alpha);
  for (std::size_t y = 0; y < 2; ++y) CHECK(std::abs(sig[y] - ce.framework.commitment_signal(star->model)[y]) <= 1e-8);

  const auto pc = product_choice(0.6, 0.3, 0.1);
  CHECK_FALSE(find_alpha_star(pc.framework, pc.game.rho()));

  const auto canon = product_choice(0.6, 0.3, 0.0);
  const auto a = find_alpha_star(canon.framework, canon.game.rho());
  REQUIRE(a);
  CHECK((*a).alpha[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("dc_dn on the misspecified-normal instance") {
  const auto s = normal_misspec_scenario();
  const auto fit = dc_dn(s.framework, s.game.rho(), Distribution::point_mass(2, 0));
  CHECK(std::abs(fit.d_c - oracle::bernoulli_kl(0.6, 0.58)) <= 1e-12);
  double arg = 0.0;
  const double dn = oracle::grid_min_1d([](double x) { return oracle::bernoulli_kl(0.6, 0.15 + 0.3 * x); }, 1e-6, &arg);
  CHECK(std::abs(fit.d_n - dn) <= 1e-9);
  CHECK(fit.d_c == doctest::Approx(0.000825).epsilon(1e-2));
  CHECK(fit.d_n == doctest::Approx(0.045228).epsilon(1e-4));
  CHECK(fit.d_c < fit.d_n);
  CHECK(fit.m_star == 0);

  // Correct normal kernels fit rho_alpha* exactly; the matching commitment model gives d_C = 0.
  const auto ce = counter_example(0.6, 0.3, 0.05, 0.55);
  const auto f2 = dc_dn(ce.framework, ce.game.rho(), *ce.alpha_star);
  CHECK(f2.d_n <= 1e-10);
  CHECK(f2.d_c <= 1e-12);
}

TEST_CASE("pure actions attain the max of the normal-fit divergence") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 50; ++i) {
    const auto rho = random_rho(rng, 2, 3);
    std::vector<Distribution> f{random_dist(rng, 3, 0.05), random_dist(rng, 3, 0.05)};
    double pure = 0.0;
    for (std::size_t a = 0; a < 2; ++a) pure = std::max(pure, kl(rho.row(a), f[a]));
    double dense = 0.0;
    for (int k = 0; k <= 10000; ++k) {
      const double x = k / 10000.0;
      const Distribution al({x, 1.0 - x});
      dense = std::max(dense, kl(mix_signal_dist(rho, al), mixture(f, al.weights())));
    }
    CHECK(dense <= pure + 1e-9);
    CHECK(dense >= pure - 1e-12);
  }
}

TEST_CASE("normal favoring check") {
  const auto pc = product_choice(0.6, 0.3, 0.1);
  CHECK(normal_favoring_check(pc.framework, pc.game.rho(), {0}));
  const auto m = normal_favoring_margin(pc.framework, pc.game.rho(), {0});
  CHECK(m.worst_normal_fit == 0.0);
  CHECK(m.margin() == doctest::Approx(0.0225824).epsilon(1e-6));

  // Misspecified normal kernels next to a non-separating commitment explanation.
  const auto nm = normal_misspec_scenario();
  const auto nmm = normal_favoring_margin(nm.framework, nm.game.rho(), {0});
  CHECK(nmm.worst_normal_fit > nmm.commitment_separation);
  CHECK_FALSE(normal_favoring_check(nm.framework, nm.game.rho(), {0}));

  const auto canon = product_choice(0.6, 0.3, 0.0);
  CHECK_FALSE(normal_favoring_check(canon.framework, canon.game.rho(), {0}));

  CHECK_THROWS_AS(normal_favoring_check(pc.framework, pc.game.rho(), {}), DomainError);
}
