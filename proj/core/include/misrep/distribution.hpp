#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace misrep {

// Probability vector over a finite label set.
//
// Construction accepts weights that sum to one within kInputTolerance and
// rescales them so the stored weights sum to one within 1e-12. Anything
// further off is rejected rather than silently renormalized.
class Distribution {
 public:
  static constexpr double kInputTolerance = 1e-9;

  Distribution() = default;
  explicit Distribution(std::vector<double> weights);

  static Distribution point_mass(std::size_t size, std::size_t index);
  static Distribution uniform(std::size_t size);

  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  // Indices whose weight exceeds `cutoff`.
  std::vector<std::size_t> support(double cutoff = 0.0) const;
  double min_weight() const;

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> weights_;
};

// Convex combination sum_i weights[i] * components[i].
Distribution mixture(std::span<const Distribution> components,
                     std::span<const double> weights);

// Throws DimensionError naming `what` unless a.size() == b.size().
void require_same_size(std::size_t a, std::size_t b, const std::string& what);

// Dense row-major matrix of reals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<std::vector<double>> to_rows() const;
  double max_abs() const;
  double min() const;
  double max() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace misrep
