#include <benchmark/benchmark.h>

#include "misrep/divergence.hpp"
#include "misrep/scenarios.hpp"
#include "misrep/score_bounds.hpp"
#include "misrep/simulator.hpp"

using namespace misrep;

static void BM_Kstar(benchmark::State& state) {
  const auto g = product_choice(0.9, 0.4, 0.0).game;
  const Distribution alpha({0.7, 0.3}), beta = Distribution::point_mass(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(kstar(g, alpha, beta, +1).z);
}
BENCHMARK(BM_Kstar);

static void BM_Kappa(benchmark::State& state) {
  const auto g = product_choice(0.9, 0.4, 0.0).game;
  KappaOptions o;
  o.grid = 1.0 / static_cast<double>(state.range(0));
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(kappa(g, +1, 0.0, o).value);
}
BENCHMARK(BM_Kappa)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_HullMembership(benchmark::State& state) {
  const auto s = three_signal(0.6, 0.3, 0.1, 0.02, 0.55);
  for (auto _ : state) benchmark::DoNotOptimize(hull_membership(s.framework.commitment_signal(0), s.game.rho()).member);
}
BENCHMARK(BM_HullMembership);

static void BM_MinKl(benchmark::State& state) {
  const auto s = three_signal(0.6, 0.3, 0.1, 0.02, 0.55);
  for (auto _ : state)
    benchmark::DoNotOptimize(min_kl_over_attainable(s.framework.commitment_signal(0), s.game.rho()).value);
}
BENCHMARK(BM_MinKl);

static void BM_SimulateRun(benchmark::State& state) {
  const auto s = product_choice(0.6, 0.3, 0.15);
  SimulationConfig c;
  c.delta = 0.99;
  c.horizon = static_cast<std::size_t>(state.range(0));
  c.truncation_tolerance = 0.5;
  c.normal_strategy = Strategy::stationary(Distribution::point_mass(2, 1));
  std::size_t run = 0;
  for (auto _ : state) benchmark::DoNotOptimize(simulate_run(s.game, s.framework, c, run++).length());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateRun)->Arg(400)->Arg(2500);

BENCHMARK_MAIN();
