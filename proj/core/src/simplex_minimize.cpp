#include "misrep/simplex_minimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "misrep/errors.hpp"

namespace misrep {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Minimizes phi(gamma) = f(x + gamma d) on [0, gamma_max] by bisection on the
// sign of phi'. phi is convex, so phi' is nondecreasing.
double line_search(const SimplexObjective& f, std::span<const double> x, std::span<const double> d,
                   double gamma_max, std::vector<double>& probe, std::vector<double>& grad) {
  auto slope = [&](double gamma) {
    for (std::size_t i = 0; i < x.size(); ++i) probe[i] = x[i] + gamma * d[i];
    f.gradient(probe, grad);
    return dot(grad, d);
  };
  if (slope(gamma_max) <= 0.0) return gamma_max;
  double lo = 0.0;
  double hi = gamma_max;
  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, gamma_max); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (slope(mid) > 0.0) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SimplexMinimum minimize_on_simplex(const SimplexObjective& f, std::size_t n,
                                   const SimplexMinimizeOptions& options) {
  if (n == 0) throw DomainError("minimization over an empty simplex");
  std::vector<double> x(n, 0.0);
  {
    std::size_t best = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(x.begin(), x.end(), 0.0);
      x[i] = 1.0;
      const double v = f.value(x);
      if (v < best_value) {
        best_value = v;
        best = i;
      }
    }
    std::fill(x.begin(), x.end(), 0.0);
    x[best] = 1.0;
  }

  std::vector<double> grad(n), d(n), probe(n), scratch(n);
  SimplexMinimum out;
  for (std::size_t iter = 0;; ++iter) {
    f.gradient(x, grad);
    const double gx = dot(grad, x);
    std::size_t fw = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (grad[i] < grad[fw]) fw = i;
    std::size_t away = n;
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] > 0.0 && (away == n || grad[i] > grad[away])) away = i;
    const double fw_gap = gx - grad[fw];
    out.gap = std::max(fw_gap, 0.0);
    out.iterations = iter;
    if (fw_gap <= options.gap_tolerance) {
      out.converged = true;
      break;
    }
    if (iter >= options.max_iterations) break;

    const double away_gap = grad[away] - gx;
    double gamma_max = 1.0;
    bool away_step = false;
    if (fw_gap >= away_gap || x[away] >= 1.0) {
      for (std::size_t i = 0; i < n; ++i) d[i] = -x[i];
      d[fw] += 1.0;
    } else {
      away_step = true;
      for (std::size_t i = 0; i < n; ++i) d[i] = x[i];
      d[away] -= 1.0;
      gamma_max = x[away] / (1.0 - x[away]);
    }
    const double gamma = line_search(f, x, d, gamma_max, probe, scratch);
    for (std::size_t i = 0; i < n; ++i) x[i] = std::max(0.0, x[i] + gamma * d[i]);
    if (away_step && gamma >= gamma_max) x[away] = 0.0;  // drop step
    double total = 0.0;
    for (double v : x) total += v;
    for (double& v : x) v /= total;
  }
  out.argmin = x;
  out.value = f.value(x);
  return out;
}

}  // namespace misrep
