#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "misrep/distribution.hpp"
#include "misrep/game_model.hpp"

namespace misrep {

// Ties among short-run best responses are admitted within this tolerance.
inline constexpr double kBestResponseTieTolerance = 1e-9;
// Mass at or below this does not count as being in the support of a gridded action.
inline constexpr double kSupportCutoff = 1e-9;

// Pure short-run actions maximizing sum_y q(y) v_tilde(b, y), in index order.
std::vector<std::size_t> br2(const StageGame& game, const Distribution& q);

// max_b v(alpha, b) - v(alpha, beta).
double optimality_loss(const StageGame& game, const Distribution& alpha, const Distribution& beta);

struct ScoreResult {
  bool feasible = false;
  double z = 0.0;
  // x(y) = w(y) - z per signal.
  std::vector<double> offsets;
  int lambda = 1;
};

// Half-space program: maximize lambda * z over (z, x) subject to
//   z  = u(a, beta) + sum_y rho(y|a) x(y)   for a in supp(alpha),
//   z >= u(a', beta) + sum_y rho(y|a') x(y)  for every a',
//   lambda * x(y) <= 0                       for every y.
ScoreResult kstar(const StageGame& game, const Distribution& alpha, const Distribution& beta,
                  int lambda);

// Largest violation of the kstar constraints by (z, offsets); 0 when all hold.
double kstar_violation(const StageGame& game, const Distribution& alpha, const Distribution& beta,
                       const ScoreResult& result);

// All points of the simplex in `dimension` coordinates whose entries are
// multiples of 1/steps, in lexicographic order of the integer compositions.
std::vector<Distribution> simplex_grid(std::size_t dimension, std::size_t steps);

// Number of grid steps per unit for a resolution in (0, 1]; the realized step
// 1/steps never exceeds the requested resolution.
std::size_t grid_steps(double resolution);

struct KappaOptions {
  double grid = 1e-3;
  // Resolution of the mixtures tried among eta-admissible pure responses.
  double beta_subgrid = 1e-2;
  // 0 picks std::thread::hardware_concurrency().
  std::size_t threads = 0;
};

struct KappaResult {
  // sup of lambda * z; -infinity when no admissible pair is feasible.
  double value = -std::numeric_limits<double>::infinity();
  bool feasible = false;
  Distribution alpha;
  Distribution beta;
  // The maximizing beta is not a pure action.
  bool mixed_beta_wins = false;
  double grid = 0.0;
};

// eta-relaxed score in direction lambda over a gridded (alpha, beta) search.
KappaResult kappa(const StageGame& game, int lambda, double eta, const KappaOptions& options = {});

struct PayoffSetResult {
  double kappa_plus = 0.0;
  double kappa_minus = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double grid_resolution = 0.0;
  bool mixed_beta_flag = false;
};

// Complete-information payoff interval [max(U_min, -kappa(-1)), min(U_max, kappa(+1))].
PayoffSetResult ci_payoff_set(const StageGame& game, const KappaOptions& options = {});

struct StackelbergResult {
  double value = -std::numeric_limits<double>::infinity();
  Distribution argmax_alpha;
};

// sup over gridded alpha of min_{b in br2(rho_alpha)} u(alpha, b).
StackelbergResult stackelberg(const StageGame& game, double grid);
// Same with alpha restricted to pure actions.
StackelbergResult pure_stackelberg(const StageGame& game);

// min over br2(rho_alpha*) of u(alpha*, b).
double reputation_lower_bound(const StageGame& game, const Distribution& alpha_star);

// u(alpha, b) for a pure short-run action.
double long_run_payoff(const StageGame& game, const Distribution& alpha, std::size_t b);

}  // namespace misrep
