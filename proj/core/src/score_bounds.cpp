#include "misrep/score_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "misrep/errors.hpp"
#include "misrep/lp.hpp"

namespace misrep {

std::vector<std::size_t> br2(const StageGame& game, const Distribution& q) {
  require_same_size(q.size(), game.num_signals(), "best-response belief");
  const std::size_t B = game.num_short_run_actions();
  std::vector<double> values(B);
  for (std::size_t b = 0; b < B; ++b) values[b] = realized_payoff(game, b, q);
  const double best = *std::max_element(values.begin(), values.end());
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < B; ++b)
    if (values[b] >= best - kBestResponseTieTolerance) out.push_back(b);
  return out;
}

namespace {

std::vector<double> ex_ante_short_run_values(const StageGame& game, const Distribution& alpha) {
  const std::size_t B = game.num_short_run_actions();
  std::vector<double> out(B, 0.0);
  for (std::size_t a = 0; a < alpha.size(); ++a) {
    if (alpha[a] == 0.0) continue;
    for (std::size_t b = 0; b < B; ++b) out[b] += alpha[a] * game.v(a, b);
  }
  return out;
}

double u_against(const StageGame& game, std::size_t a, const Distribution& beta) {
  double s = 0.0;
  for (std::size_t b = 0; b < beta.size(); ++b) s += beta[b] * game.u()(a, b);
  return s;
}

}  // namespace

double optimality_loss(const StageGame& game, const Distribution& alpha, const Distribution& beta) {
  require_same_size(alpha.size(), game.num_long_run_actions(), "long-run mixed action");
  require_same_size(beta.size(), game.num_short_run_actions(), "short-run mixed action");
  const auto values = ex_ante_short_run_values(game, alpha);
  double achieved = 0.0;
  for (std::size_t b = 0; b < beta.size(); ++b) achieved += beta[b] * values[b];
  return std::max(0.0, *std::max_element(values.begin(), values.end()) - achieved);
}

ScoreResult kstar(const StageGame& game, const Distribution& alpha, const Distribution& beta,
                  int lambda) {
  if (lambda != 1 && lambda != -1) throw DomainError("direction must be +1 or -1");
  require_same_size(alpha.size(), game.num_long_run_actions(), "long-run mixed action");
  require_same_size(beta.size(), game.num_short_run_actions(), "short-run mixed action");
  const std::size_t A = game.num_long_run_actions();
  const std::size_t Y = game.num_signals();
  const auto& rho = game.rho();

  // Variables: z, x_0 .. x_{Y-1}.
  lp::Problem prob(1 + Y);
  std::fill(prob.free.begin(), prob.free.end(), true);
  prob.objective[0] = -static_cast<double>(lambda);
  for (std::size_t a = 0; a < A; ++a) {
    std::vector<double> row(1 + Y, 0.0);
    row[0] = 1.0;
    for (std::size_t y = 0; y < Y; ++y) row[1 + y] = -rho(y, a);
    const bool in_support = alpha[a] > kSupportCutoff;
    prob.add(std::move(row), in_support ? lp::Sense::equal : lp::Sense::greater_equal,
             u_against(game, a, beta));
  }
  for (std::size_t y = 0; y < Y; ++y) {
    std::vector<double> row(1 + Y, 0.0);
    row[1 + y] = static_cast<double>(lambda);
    prob.add(std::move(row), lp::Sense::less_equal, 0.0);
  }
  const auto sol = lp::solve(prob);
  ScoreResult out;
  out.lambda = lambda;
  if (sol.status == lp::Status::unbounded) throw InternalError("half-space program is unbounded");
  if (sol.status == lp::Status::infeasible) return out;
  out.feasible = true;
  out.z = sol.x[0];
  out.offsets.assign(sol.x.begin() + 1, sol.x.end());
  // Clean sign dust so the half-space constraint holds exactly.
  for (double& x : out.offsets)
    if (lambda * x > 0.0 && lambda * x < 1e-12) x = 0.0;
  return out;
}

double kstar_violation(const StageGame& game, const Distribution& alpha, const Distribution& beta,
                       const ScoreResult& result) {
  if (!result.feasible) return 0.0;
  const auto& rho = game.rho();
  double worst = 0.0;
  for (std::size_t y = 0; y < result.offsets.size(); ++y)
    worst = std::max(worst, result.lambda * result.offsets[y]);
  for (std::size_t a = 0; a < game.num_long_run_actions(); ++a) {
    double rhs = u_against(game, a, beta);
    for (std::size_t y = 0; y < result.offsets.size(); ++y) rhs += rho(y, a) * result.offsets[y];
    if (alpha[a] > kSupportCutoff) worst = std::max(worst, std::abs(result.z - rhs));
    else worst = std::max(worst, rhs - result.z);
  }
  return worst;
}

std::size_t grid_steps(double resolution) {
  if (!(resolution > 0.0) || resolution > 1.0) throw DomainError("grid resolution must lie in (0, 1]");
  return static_cast<std::size_t>(std::ceil(1.0 / resolution - 1e-9));
}

std::vector<Distribution> simplex_grid(std::size_t dimension, std::size_t steps) {
  if (dimension == 0) throw DimensionError("simplex grid needs at least one coordinate");
  if (steps == 0) throw DomainError("simplex grid needs at least one step");
  std::vector<Distribution> out;
  std::vector<std::size_t> counts(dimension, 0);
  const double inv = 1.0 / static_cast<double>(steps);
  // Enumerate compositions of `steps` into `dimension` parts, first coordinate descending.
  auto emit = [&]() {
    std::vector<double> w(dimension);
    for (std::size_t i = 0; i < dimension; ++i) w[i] = static_cast<double>(counts[i]) * inv;
    out.emplace_back(std::move(w));
  };
  auto rec = [&](auto&& self, std::size_t i, std::size_t remaining) -> void {
    if (i + 1 == dimension) {
      counts[i] = remaining;
      emit();
      return;
    }
    for (std::size_t c = remaining + 1; c-- > 0;) {
      counts[i] = c;
      self(self, i + 1, remaining - c);
    }
  };
  rec(rec, 0, steps);
  return out;
}

namespace {

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  bool feasible = false;
  Distribution alpha;
  Distribution beta;
};

void consider(Candidate& best, double value, const Distribution& alpha, const Distribution& beta) {
  if (!best.feasible || value > best.value) {
    best.value = value;
    best.feasible = true;
    best.alpha = alpha;
    best.beta = beta;
  }
}

struct ChunkBest {
  Candidate overall;
  Candidate pure;
};

std::size_t resolve_threads(std::size_t requested, std::size_t work) {
  std::size_t n = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return std::max<std::size_t>(1, std::min(n, work));
}

}  // namespace

KappaResult kappa(const StageGame& game, int lambda, double eta, const KappaOptions& options) {
  if (lambda != 1 && lambda != -1) throw DomainError("direction must be +1 or -1");
  if (!(eta >= 0.0)) throw DomainError("eta must be nonnegative");
  const std::size_t A = game.num_long_run_actions();
  const std::size_t B = game.num_short_run_actions();
  const auto alphas = simplex_grid(A, grid_steps(options.grid));
  const std::size_t sub_steps = grid_steps(options.beta_subgrid);

  auto evaluate = [&](std::size_t begin, std::size_t end) {
    ChunkBest best;
    for (std::size_t i = begin; i < end; ++i) {
      const Distribution& alpha = alphas[i];
      const auto values = ex_ante_short_run_values(game, alpha);
      const double top = *std::max_element(values.begin(), values.end());
      std::vector<std::size_t> admissible;
      for (std::size_t b = 0; b < B; ++b)
        if (top - values[b] <= eta + kBestResponseTieTolerance) admissible.push_back(b);
      for (std::size_t b : admissible) {
        const Distribution beta = Distribution::point_mass(B, b);
        const auto r = kstar(game, alpha, beta, lambda);
        if (!r.feasible) continue;
        consider(best.overall, lambda * r.z, alpha, beta);
        consider(best.pure, lambda * r.z, alpha, beta);
      }
      if (admissible.size() < 2) continue;
      for (const auto& mix : simplex_grid(admissible.size(), sub_steps)) {
        if (mix.support().size() < 2) continue;
        std::vector<double> w(B, 0.0);
        for (std::size_t k = 0; k < admissible.size(); ++k) w[admissible[k]] = mix[k];
        const Distribution beta(std::move(w));
        if (optimality_loss(game, alpha, beta) > eta + kBestResponseTieTolerance) continue;
        const auto r = kstar(game, alpha, beta, lambda);
        if (r.feasible) consider(best.overall, lambda * r.z, alpha, beta);
      }
    }
    return best;
  };

  const std::size_t nthreads = resolve_threads(options.threads, alphas.size());
  std::vector<ChunkBest> chunks(nthreads);
  const std::size_t per = (alphas.size() + nthreads - 1) / nthreads;
  if (nthreads == 1) {
    chunks[0] = evaluate(0, alphas.size());
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) {
      const std::size_t begin = std::min(alphas.size(), t * per);
      const std::size_t end = std::min(alphas.size(), begin + per);
      pool.emplace_back([&, t, begin, end] { chunks[t] = evaluate(begin, end); });
    }
    for (auto& th : pool) th.join();
  }

  // Reduce in enumeration order so the first maximizer wins regardless of threads.
  Candidate overall;
  Candidate pure;
  for (const auto& c : chunks) {
    if (c.overall.feasible) consider(overall, c.overall.value, c.overall.alpha, c.overall.beta);
    if (c.pure.feasible) consider(pure, c.pure.value, c.pure.alpha, c.pure.beta);
  }
  KappaResult out;
  out.grid = 1.0 / static_cast<double>(grid_steps(options.grid));
  if (!overall.feasible) return out;
  out.feasible = true;
  out.value = overall.value;
  out.alpha = overall.alpha;
  out.beta = overall.beta;
  out.mixed_beta_wins = !pure.feasible || overall.value > pure.value + kBestResponseTieTolerance;
  return out;
}

PayoffSetResult ci_payoff_set(const StageGame& game, const KappaOptions& options) {
  const auto plus = kappa(game, +1, 0.0, options);
  const auto minus = kappa(game, -1, 0.0, options);
  PayoffSetResult out;
  out.kappa_plus = plus.value;
  out.kappa_minus = minus.value;
  out.lo = std::max(game.u_min(), -minus.value);
  out.hi = std::min(game.u_max(), plus.value);
  out.grid_resolution = plus.grid;
  out.mixed_beta_flag = plus.mixed_beta_wins || minus.mixed_beta_wins;
  return out;
}

double long_run_payoff(const StageGame& game, const Distribution& alpha, std::size_t b) {
  require_same_size(alpha.size(), game.num_long_run_actions(), "long-run mixed action");
  double s = 0.0;
  for (std::size_t a = 0; a < alpha.size(); ++a) s += alpha[a] * game.u()(a, b);
  return s;
}

double reputation_lower_bound(const StageGame& game, const Distribution& alpha_star) {
  const auto responses = br2(game, mix_signal_dist(game.rho(), alpha_star));
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t b : responses) worst = std::min(worst, long_run_payoff(game, alpha_star, b));
  return worst;
}

namespace {

StackelbergResult best_commitment(const StageGame& game, const std::vector<Distribution>& alphas) {
  StackelbergResult out;
  for (const auto& alpha : alphas) {
    const double v = reputation_lower_bound(game, alpha);
    if (out.argmax_alpha.empty() || v > out.value) {
      out.value = v;
      out.argmax_alpha = alpha;
    }
  }
  return out;
}

}  // namespace

StackelbergResult stackelberg(const StageGame& game, double grid) {
  return best_commitment(game, simplex_grid(game.num_long_run_actions(), grid_steps(grid)));
}

StackelbergResult pure_stackelberg(const StageGame& game) {
  std::vector<Distribution> vertices;
  for (std::size_t a = 0; a < game.num_long_run_actions(); ++a)
    vertices.push_back(Distribution::point_mass(game.num_long_run_actions(), a));
  return best_commitment(game, vertices);
}

}  // namespace misrep
