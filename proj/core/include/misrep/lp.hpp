#pragma once

#include <cstddef>
#include <vector>

// Dense two-phase simplex for the small linear programs that appear in hull
// membership and half-space score computations (tens of variables at most).
namespace misrep::lp {

enum class Sense { less_equal, greater_equal, equal };
enum class Status { optimal, infeasible, unbounded };

struct Constraint {
  std::vector<double> coefficients;
  Sense sense = Sense::less_equal;
  double rhs = 0.0;
};

// minimize objective . x  subject to constraints; each variable is either
// nonnegative (default) or free.
struct Problem {
  explicit Problem(std::size_t num_variables)
      : objective(num_variables, 0.0), free(num_variables, false) {}

  std::size_t num_variables() const { return objective.size(); }
  void add(std::vector<double> coefficients, Sense sense, double rhs);

  std::vector<double> objective;
  std::vector<bool> free;
  std::vector<Constraint> constraints;
};

struct Solution {
  Status status = Status::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  // Phase-one residual (sum of artificial variables at the phase-one optimum).
  double infeasibility = 0.0;
};

struct Options {
  double pivot_tolerance = 1e-12;
  // Phase-one optimum above this counts as infeasible.
  double feasibility_tolerance = 1e-9;
  std::size_t max_pivots = 20000;
};

Solution solve(const Problem& problem, const Options& options = {});

}  // namespace misrep::lp
