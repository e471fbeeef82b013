#include "misrep/lp.hpp"

#include <cmath>
#include <limits>

#include "misrep/distribution.hpp"
#include "misrep/errors.hpp"

namespace misrep::lp {

void Problem::add(std::vector<double> coefficients, Sense sense, double rhs) {
  require_same_size(coefficients.size(), num_variables(), "LP constraint width");
  constraints.push_back({std::move(coefficients), sense, rhs});
}

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), cells_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return cells_[r * (cols_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return cells_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` holds reduced costs; its rhs cell holds minus the objective.
  double& cost(std::size_t c) { return at(rows_, c); }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) /= p;
    for (std::size_t r = 0; r <= rows_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
    }
    basis_[pr] = pc;
  }

  void set_costs(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= cols_; ++j) cost(j) = j < cols_ ? c[j] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const double cb = c[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) cost(j) -= cb * at(r, j);
    }
  }

  void drop_row(std::size_t r) {
    std::vector<double> next((rows_) * (cols_ + 1), 0.0);
    std::size_t w = 0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      for (std::size_t c = 0; c <= cols_; ++c) next[w * (cols_ + 1) + c] = at(i, c);
      ++w;
    }
    cells_ = std::move(next);
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> cells_;
  std::vector<std::size_t> basis_;
};

enum class Outcome { optimal, unbounded };

// Bland's rule: smallest-index entering column, smallest-basis-index ties in
// the ratio test. Cycling-free, and the programs here are tiny.
Outcome run_simplex(Tableau& t, const std::vector<bool>& allowed, const Options& opt) {
  for (std::size_t iter = 0; iter < opt.max_pivots; ++iter) {
    std::size_t enter = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
      if (allowed[j] && t.cost(j) < -opt.pivot_tolerance) {
        enter = j;
        break;
      }
    }
    if (enter == t.cols()) return Outcome::optimal;
    std::size_t leave = t.rows();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, enter);
      if (a <= opt.pivot_tolerance) continue;
      const double ratio = t.rhs(r) / a;
      if (ratio < best - 1e-14 ||
          (std::abs(ratio - best) <= 1e-14 && leave < t.rows() && t.basis()[r] < t.basis()[leave])) {
        best = ratio;
        leave = r;
      }
    }
    if (leave == t.rows()) return Outcome::unbounded;
    t.pivot(leave, enter);
  }
  throw InternalError("simplex pivot limit reached");
}

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  const std::size_t n = problem.num_variables();
  const std::size_t m = problem.constraints.size();

  // Column layout: split variables, then one slack per inequality, then one
  // artificial per row that has no slack usable as an initial basis.
  std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = cols++;
    if (problem.free[j]) neg_col[j] = cols++;
  }

  std::vector<double> sign(m, 1.0);
  std::vector<Sense> sense(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    sense[i] = c.sense;
    if (c.rhs < 0.0) {
      sign[i] = -1.0;
      if (c.sense == Sense::less_equal) sense[i] = Sense::greater_equal;
      else if (c.sense == Sense::greater_equal) sense[i] = Sense::less_equal;
    }
  }
  std::vector<std::size_t> slack_col(m, SIZE_MAX), art_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i)
    if (sense[i] != Sense::equal) slack_col[i] = cols++;
  const std::size_t first_artificial = cols;
  for (std::size_t i = 0; i < m; ++i)
    if (sense[i] != Sense::less_equal) art_col[i] = cols++;

  Tableau t(m, cols);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = problem.constraints[i];
    for (std::size_t j = 0; j < n; ++j) {
      const double a = sign[i] * c.coefficients[j];
      t.at(i, pos_col[j]) = a;
      if (neg_col[j] != SIZE_MAX) t.at(i, neg_col[j]) = -a;
    }
    if (slack_col[i] != SIZE_MAX) t.at(i, slack_col[i]) = sense[i] == Sense::less_equal ? 1.0 : -1.0;
    if (art_col[i] != SIZE_MAX) t.at(i, art_col[i]) = 1.0;
    t.rhs(i) = sign[i] * c.rhs;
    t.basis()[i] = art_col[i] != SIZE_MAX ? art_col[i] : slack_col[i];
  }

  Solution out;
  std::vector<bool> allowed(cols, true);

  if (first_artificial < cols) {
    std::vector<double> phase1(cols, 0.0);
    for (std::size_t j = first_artificial; j < cols; ++j) phase1[j] = 1.0;
    t.set_costs(phase1);
    run_simplex(t, allowed, options);
    out.infeasibility = -t.cost(cols) < 0.0 ? 0.0 : -t.cost(cols);
    if (out.infeasibility > options.feasibility_tolerance) {
      out.status = Status::infeasible;
      return out;
    }
    for (std::size_t r = 0; r < t.rows();) {
      if (t.basis()[r] < first_artificial) {
        ++r;
        continue;
      }
      std::size_t pc = first_artificial;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (std::abs(t.at(r, j)) > 1e-9) {
          pc = j;
          break;
        }
      }
      if (pc == first_artificial) {
        t.drop_row(r);  // redundant equality
      } else {
        t.pivot(r, pc);
        ++r;
      }
    }
    for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;
  }

  std::vector<double> phase2(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    phase2[pos_col[j]] = problem.objective[j];
    if (neg_col[j] != SIZE_MAX) phase2[neg_col[j]] = -problem.objective[j];
  }
  t.set_costs(phase2);
  if (run_simplex(t, allowed, options) == Outcome::unbounded) {
    out.status = Status::unbounded;
    return out;
  }

  std::vector<double> column_value(cols, 0.0);
  for (std::size_t r = 0; r < t.rows(); ++r) column_value[t.basis()[r]] = t.rhs(r);
  out.x.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    out.x[j] = column_value[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) out.x[j] -= column_value[neg_col[j]];
  }
  out.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) out.objective += problem.objective[j] * out.x[j];
  out.status = Status::optimal;
  return out;
}

}  // namespace misrep::lp
