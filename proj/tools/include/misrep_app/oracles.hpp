#pragma once

// Independent reference computations used to check the library: closed forms
// and brute-force grids written against plain vectors, sharing no code with
// the solvers they check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace misrep::oracle {

inline double kl(const std::vector<double>& p, const std::vector<double>& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s += p[i] * std::log(p[i] / q[i]);
  return s;
}

inline double bernoulli_kl(double a, double b) { return kl({a, 1.0 - a}, {b, 1.0 - b}); }

// Complete-information ceiling of the product-choice game.
inline double product_choice_ceiling(double p, double q) { return std::max(1.0, 2.0 - (1.0 - p) / (p - q)); }

// min of f over {0, step, 2 step, ..., 1}.
inline double grid_min_1d(const std::function<double(double)>& f, double step, double* argmin = nullptr) {
  const auto n = static_cast<std::size_t>(std::llround(1.0 / step));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(n);
    const double v = f(x);
    if (v < best) {
      best = v;
      if (argmin) *argmin = x;
    }
  }
  return best;
}

// min over the simplex in `dim` coordinates of a convex f, by repeatedly
// gridding a box around the incumbent and shrinking it.
inline double zoom_min_simplex(const std::function<double(const std::vector<double>&)>& f, std::size_t dim,
                               std::size_t points_per_axis = 20, double final_width = 1e-8) {
  const std::size_t free_dims = dim - 1;
  if (free_dims == 0) return f({1.0});
  std::vector<double> lo(free_dims, 0.0), hi(free_dims, 1.0);
  std::vector<double> best_x(dim, 1.0 / static_cast<double>(dim));
  double best = f(best_x);
  std::vector<double> x(dim);
  std::vector<std::size_t> idx(free_dims);
  for (double width = 1.0; width > final_width;) {
    std::fill(idx.begin(), idx.end(), 0);
    std::vector<double> step(free_dims);
    for (std::size_t i = 0; i < free_dims; ++i) step[i] = (hi[i] - lo[i]) / static_cast<double>(points_per_axis);
    while (true) {
      double used = 0.0;
      for (std::size_t i = 0; i < free_dims; ++i) {
        x[i] = lo[i] + step[i] * static_cast<double>(idx[i]);
        used += x[i];
      }
      if (used <= 1.0 + 1e-15) {
        x[free_dims] = std::max(0.0, 1.0 - used);
        const double v = f(x);
        if (v < best) {
          best = v;
          best_x = x;
        }
      }
      std::size_t k = 0;
      while (k < free_dims && ++idx[k] > points_per_axis) idx[k++] = 0;
      if (k == free_dims) break;
    }
    width = 0.0;
    for (std::size_t i = 0; i < free_dims; ++i) {
      lo[i] = std::max(0.0, best_x[i] - 2.0 * step[i]);
      hi[i] = std::min(1.0, best_x[i] + 2.0 * step[i]);
      width = std::max(width, hi[i] - lo[i]);
    }
  }
  return best;
}

// min over alpha of D(sum_a alpha(a) rows[a] || q), rows indexed [action][signal].
inline double brute_min_kl_attainable(const std::vector<std::vector<double>>& rows, const std::vector<double>& q) {
  const std::size_t Y = q.size();
  return zoom_min_simplex(
      [&](const std::vector<double>& alpha) {
        std::vector<double> r(Y, 0.0);
        for (std::size_t a = 0; a < rows.size(); ++a)
          for (std::size_t y = 0; y < Y; ++y) r[y] += alpha[a] * rows[a][y];
        return kl(r, q);
      },
      rows.size());
}

}  // namespace misrep::oracle
