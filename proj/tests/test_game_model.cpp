#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "misrep/distribution.hpp"
#include "misrep/errors.hpp"
#include "misrep/game_model.hpp"
#include "misrep/scenarios.hpp"

using namespace misrep;

namespace {
Distribution bern(double p) { return Distribution({p, 1.0 - p}); }
}  // namespace

TEST_CASE("distribution validates and normalizes") {
  const Distribution d({0.25, 0.75});
  CHECK(d.size() == 2);
  CHECK(d[1] == doctest::Approx(0.75));
  // Within the input tolerance the weights are rescaled.
  const Distribution near({0.5 + 4e-10, 0.5});
  CHECK(std::abs(near[0] + near[1] - 1.0) <= 1e-12);
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), ProbabilityError);
  CHECK_THROWS_AS(Distribution({1.1, -0.1}), ProbabilityError);
  CHECK_THROWS_AS(Distribution(std::vector<double>{}), ProbabilityError);
  CHECK_THROWS_AS(Distribution::point_mass(2, 2), DimensionError);
  CHECK(Distribution::uniform(4)[3] == doctest::Approx(0.25));
  CHECK(Distribution({0.0, 1e-10, 1.0 - 1e-10}).support(1e-9) == std::vector<std::size_t>{2});
}

TEST_CASE("signal structure needs full support") {
  CHECK_THROWS_AS(SignalStructure({bern(1.0), bern(0.3)}), ProbabilityError);
  CHECK_THROWS_AS(SignalStructure({bern(0.6), Distribution({0.2, 0.3, 0.5})}), DimensionError);
}

TEST_CASE("mix_signal_dist") {
  const SignalStructure rho({bern(0.6), bern(0.3)});
  const auto h = mix_signal_dist(rho, Distribution::point_mass(2, 0));
  CHECK(h[0] == doctest::Approx(0.6));
  CHECK(h[1] == doctest::Approx(0.4));
  CHECK(mix_signal_dist(rho, Distribution({0.5, 0.5}))[0] == doctest::Approx(0.45));
  const double x = 0.55 * (1.0 + 0.05 / 0.3);
  CHECK(mix_signal_dist(rho, Distribution({x, 1.0 - x}))[0] == doctest::Approx(0.4925).epsilon(1e-12));
  CHECK_THROWS_AS(mix_signal_dist(rho, Distribution::uniform(3)), DimensionError);
}

TEST_CASE("bilinear payoffs on the product-choice matrix") {
  const auto game = product_choice(0.9, 0.4, 0.0).game;
  auto hh = bilinear_payoffs(game, Distribution::point_mass(2, 0), Distribution::point_mass(2, 0));
  CHECK(hh.u == doctest::Approx(2.0));
  CHECK(hh.v == doctest::Approx(3.0));
  auto ll = bilinear_payoffs(game, Distribution::point_mass(2, 1), Distribution::point_mass(2, 1));
  CHECK(ll.u == doctest::Approx(1.0));
  CHECK(ll.v == doctest::Approx(1.0));
  CHECK(bilinear_payoffs(game, Distribution({0.5, 0.5}), Distribution::point_mass(2, 0)).u == doctest::Approx(2.5));
  CHECK_THROWS_AS(bilinear_payoffs(game, Distribution::uniform(3), Distribution::uniform(2)), DimensionError);
}

TEST_CASE("ex ante payoffs are consistent with realized payoffs") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (const auto& s : {product_choice(0.8, 0.3, 0.1), three_signal(0.6, 0.3, 0.1, 0.02, 0.55)}) {
    const auto& g = s.game;
    for (int i = 0; i < 100; ++i) {
      const double a = u(rng), b = u(rng);
      const Distribution alpha({a, 1.0 - a}), beta({b, 1.0 - b});
      const auto r = mix_signal_dist(g.rho(), alpha);
      double expect = 0.0;
      for (std::size_t y = 0; y < g.num_signals(); ++y)
        for (std::size_t k = 0; k < 2; ++k) expect += r[y] * beta[k] * g.v_tilde()(k, y);
      CHECK(std::abs(bilinear_payoffs(g, alpha, beta).v - expect) <= 1e-10);
      double total = 0.0;
      for (std::size_t y = 0; y < r.size(); ++y) {
        CHECK(r[y] > 0.0);
        total += r[y];
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("stage game exposes derived quantities") {
  const auto g = product_choice(0.9, 0.4, 0.0).game;
  CHECK(g.v_tilde_sup_norm() == doctest::Approx(3.6));
  CHECK(g.u_min() == 0.0);
  CHECK(g.u_max() == 3.0);
  CHECK(g.v_matrix()(0, 1) == doctest::Approx(2.0));
  CHECK(g.labels().signals == std::vector<std::string>{"y_h", "y_l"});
  CHECK(realized_payoff(g, 0, bern(0.9)) == doctest::Approx(3.0));
  CHECK_THROWS_AS(StageGame({}, Matrix(2, 2), Matrix(3, 2), g.rho()), DimensionError);
}

TEST_CASE("discounted average") {
  const std::vector<double> first{1.0, 0.0, 0.0};
  CHECK(discounted_average(first, 0.5).value == doctest::Approx(0.5));
  std::vector<double> tail(200, 1.0);
  tail[0] = 0.0;
  CHECK(discounted_average(tail, 0.9).value == doctest::Approx(0.9 * (1.0 - std::pow(0.9, 199))).epsilon(1e-12));
  const std::vector<double> constant(5000, 2.0);
  const auto c = discounted_average(constant, 0.99);
  CHECK(c.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c.truncation_bound == doctest::Approx(2.0 * std::pow(0.99, 5000)));
  CHECK(std::abs(c.value - 2.0) <= c.truncation_bound + 1e-12);
  CHECK_THROWS_AS(discounted_average(std::vector<double>{}, 0.5), DomainError);
  CHECK_THROWS_AS(discounted_average(first, 1.0), DomainError);

  // Linear and monotone.
  const std::vector<double> a{1, 2, 3}, b{2, 2, 4};
  std::vector<double> sum{3, 4, 7};
  CHECK(discounted_average(sum, 0.7).value ==
        doctest::Approx(discounted_average(a, 0.7).value + discounted_average(b, 0.7).value));
  CHECK(discounted_average(a, 0.7).value <= discounted_average(b, 0.7).value);
}

TEST_CASE("matrix helpers") {
  const auto m = Matrix::from_rows({{1, -4}, {2, 3}});
  CHECK(m.max_abs() == 4.0);
  CHECK(m.min() == -4.0);
  CHECK(m.to_rows()[1][0] == 2.0);
  CHECK(m.row(1)[1] == 3.0);
}
