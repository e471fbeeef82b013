#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "misrep/belief.hpp"
#include "misrep/divergence.hpp"
#include "misrep/scenarios.hpp"

using namespace misrep;

namespace {
Distribution bern(double p) { return Distribution({p, 1.0 - p}); }

Framework two_hypotheses(double mu0) {
  return Framework({"m"}, {{bern(0.4), bern(0.4)}}, {{bern(0.7), bern(0.7)}},
                   Matrix::from_rows({{1.0 - mu0, mu0}}), Distribution::point_mass(2, 0), false);
}
}  // namespace

TEST_CASE("bayes step on two hypotheses") {
  const auto fw = two_hypotheses(0.5);
  const auto b0 = BeliefState::from_prior(fw);
  CHECK(b0.reputation() == doctest::Approx(0.5));
  const Distribution conj = Distribution::point_mass(2, 0);
  CHECK(bayes_step(b0, fw, conj, 0).reputation() == doctest::Approx(1.75 / 2.75).epsilon(1e-12));
  CHECK(bayes_step(b0, fw, conj, 0).reputation() == doctest::Approx(0.636364).epsilon(1e-6));
  CHECK(bayes_step(b0, fw, conj, 1).reputation() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(bayes_step(b0, fw, conj, 0).log_odds() == doctest::Approx(std::log(1.75)));
}

TEST_CASE("uninformative kernels leave the posterior unchanged") {
  const Framework fw({"m0", "m1"}, {{bern(0.4), bern(0.4)}, {bern(0.4), bern(0.4)}},
                     {{bern(0.4), bern(0.4)}, {bern(0.4), bern(0.4)}},
                     Matrix::from_rows({{0.1, 0.2}, {0.3, 0.4}}), Distribution::point_mass(2, 0), false);
  const auto b0 = BeliefState::from_prior(fw);
  for (std::size_t y = 0; y < 2; ++y) {
    const auto p0 = b0.posterior();
    const auto p1 = bayes_step(b0, fw, Distribution({0.3, 0.7}), y).posterior();
    for (std::size_t m = 0; m < 2; ++m)
      for (std::size_t t = 0; t < 2; ++t) CHECK(p1(m, t) == doctest::Approx(p0(m, t)).epsilon(1e-14));
  }
}

TEST_CASE("predictive mixtures") {
  const auto fw = two_hypotheses(0.5);
  CHECK(predictive(BeliefState::from_prior(fw), fw, Distribution::point_mass(2, 0))[0] == doctest::Approx(0.55));

  const auto tiny = two_hypotheses(1e-12);
  CHECK(std::abs(predictive(BeliefState::from_prior(tiny), tiny, Distribution::point_mass(2, 0))[0] - 0.4) <= 1e-11);

  // Single correctly specified model.
  const auto pc = product_choice(0.6, 0.3, 0.1, 0.3);
  const Distribution alpha({0.25, 0.75});
  const auto q = predictive(BeliefState::from_prior(pc.framework), pc.framework, alpha);
  const auto r = mix_signal_dist(pc.game.rho(), alpha);
  CHECK(q[0] == doctest::Approx(0.3 * 0.7 + 0.7 * r[0]).epsilon(1e-14));
}

TEST_CASE("log odds stay finite when the reputation rounds off") {
  auto fw = two_hypotheses(0.5);
  auto b = BeliefState::from_prior(fw);
  const Distribution conj = Distribution::point_mass(2, 0);
  for (int t = 0; t < 5000; ++t) b = bayes_step(b, fw, conj, 1);
  CHECK(b.reputation() >= 0.0);
  CHECK(b.reputation() < 1e-300);
  CHECK(b.log_odds() == doctest::Approx(5000.0 * std::log(0.5)).epsilon(1e-12));
}

TEST_CASE("one-step martingale identity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 200; ++trial) {
    const double p1 = u(rng), p2 = u(rng), c1 = u(rng), c2 = u(rng);
    const double w = u(rng);
    const Framework fw({"m0", "m1"}, {{bern(p1), bern(p2)}, {bern(p2), bern(u(rng))}},
                       {{bern(c1), bern(c1)}, {bern(c2), bern(c2)}},
                       Matrix::from_rows({{0.5 * w, 0.5 * (1.0 - w)}, {0.25, 0.25}}), Distribution::point_mass(2, 0), false);
    auto b = BeliefState::from_prior(fw);
    for (int k = 0; k < trial % 7; ++k) b = bayes_step(b, fw, Distribution({0.4, 0.6}), k % 2);
    const Distribution conj({w, 1.0 - w});
    const auto q = predictive(b, fw, conj);
    const auto before = b.posterior();
    Matrix avg(2, 2);
    for (std::size_t y = 0; y < 2; ++y) {
      const auto after = bayes_step(b, fw, conj, y).posterior();
      for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t t = 0; t < 2; ++t) avg(m, t) += q[y] * after(m, t);
    }
    for (std::size_t m = 0; m < 2; ++m)
      for (std::size_t t = 0; t < 2; ++t) CHECK(std::abs(avg(m, t) - before(m, t)) <= 1e-10);
  }
}

TEST_CASE("slp action tie-break") {
  const auto g = product_choice(0.9, 0.4, 0.0).game;
  CHECK(slp_action(g, bern(0.9)) == 0);
  CHECK(slp_action(g, bern(0.4)) == 1);
  CHECK(slp_action(g, mix_signal_dist(g.rho(), Distribution({0.5, 0.5}))) == 0);
}
