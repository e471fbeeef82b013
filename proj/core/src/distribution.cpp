#include "misrep/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "misrep/errors.hpp"

namespace misrep {

namespace {
// Entries this close below zero are treated as rounding dust.
constexpr double kNegativeDust = 1e-15;
}  // namespace

Distribution::Distribution(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw ProbabilityError("distribution over an empty label set");
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    double& w = weights_[i];
    if (!std::isfinite(w) || w < -kNegativeDust) {
      std::ostringstream os;
      os << "weight " << i << " = " << w << " is not a nonnegative finite number";
      throw ProbabilityError(os.str());
    }
    w = std::max(w, 0.0);
  }
  const double total = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  if (std::abs(total - 1.0) > kInputTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << total << ", not 1 within " << kInputTolerance;
    throw ProbabilityError(os.str());
  }
  // Already-normalized input is stored as given so serialized weights read back unchanged.
  if (std::abs(total - 1.0) > 1e-12)
    for (double& w : weights_) w /= total;
}

Distribution Distribution::point_mass(std::size_t size, std::size_t index) {
  if (index >= size) throw DimensionError("point mass index out of range");
  std::vector<double> w(size, 0.0);
  w[index] = 1.0;
  return Distribution(std::move(w));
}

Distribution Distribution::uniform(std::size_t size) {
  return Distribution(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

std::vector<std::size_t> Distribution::support(double cutoff) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] > cutoff) out.push_back(i);
  }
  return out;
}

double Distribution::min_weight() const {
  return *std::min_element(weights_.begin(), weights_.end());
}

Distribution mixture(std::span<const Distribution> components, std::span<const double> weights) {
  require_same_size(components.size(), weights.size(), "mixture weights vs components");
  if (components.empty()) throw DimensionError("mixture of zero components");
  const std::size_t n = components.front().size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < components.size(); ++k) {
    require_same_size(components[k].size(), n, "mixture component " + std::to_string(k));
    if (weights[k] == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] += weights[k] * components[k][i];
  }
  return Distribution(std::move(out));
}

void require_same_size(std::size_t a, std::size_t b, const std::string& what) {
  if (a != b) {
    std::ostringstream os;
    os << "dimension mismatch in " << what << ": " << a << " vs " << b;
    throw DimensionError(os.str());
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require_same_size(rows[r].size(), m.cols(), "matrix row " + std::to_string(r));
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r].assign(row(r).begin(), row(r).end());
  return out;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : data_) m = std::max(m, std::abs(x));
  return m;
}

double Matrix::min() const { return *std::min_element(data_.begin(), data_.end()); }
double Matrix::max() const { return *std::max_element(data_.begin(), data_.end()); }

}  // namespace misrep
