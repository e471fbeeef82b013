#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace misrep {

// Smooth convex objective on the probability simplex.
struct SimplexObjective {
  std::function<double(std::span<const double>)> value;
  // Writes the gradient at x into the second argument.
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

struct SimplexMinimizeOptions {
  double gap_tolerance = 1e-10;
  std::size_t max_iterations = 100000;
};

struct SimplexMinimum {
  std::vector<double> argmin;
  double value = 0.0;
  // Frank-Wolfe duality gap at argmin; an upper bound on value - optimum.
  double gap = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

// Away-step Frank-Wolfe with exact line search. Starts at the best vertex and
// stops once the duality gap drops below the tolerance; on hitting the
// iteration cap the best iterate is returned with converged = false.
SimplexMinimum minimize_on_simplex(const SimplexObjective& objective, std::size_t dimension,
                                   const SimplexMinimizeOptions& options = {});

}  // namespace misrep
