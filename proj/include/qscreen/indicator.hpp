#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qscreen/basis.hpp"
#include "qscreen/design.hpp"

namespace qscreen {

/// Raised when an operation defined only for 3-level designs meets another level count.
class LevelCountError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficients of the indicator function F_D(x) = sum_t b_t C_t(x),
/// with b_t = N^{-1} sum_{x in D} C_t(x).
class IndicatorCoefficients {
 public:
  IndicatorCoefficients(TupleSpace space, std::size_t runs, std::vector<double> contrast_sums);

  const TupleSpace& space() const { return space_; }
  std::size_t runs() const { return runs_; }

  double b0() const { return static_cast<double>(runs_) / static_cast<double>(space_.size()); }
  double b(std::size_t tuple_index) const { return sums_[tuple_index] / static_cast<double>(space_.size()); }
  double b(const ExponentTuple& t) const { return b(space_.index(t)); }
  /// b_t / b_0, evaluated as n^{-1} sum_x C_t(x).
  double ratio(std::size_t tuple_index) const { return sums_[tuple_index] / static_cast<double>(runs_); }
  double ratio(const ExponentTuple& t) const { return ratio(space_.index(t)); }

  std::span<const double> contrast_sums() const { return sums_; }

 private:
  TupleSpace space_;
  std::size_t runs_;
  std::vector<double> sums_;
};

IndicatorCoefficients indicator_coefficients(const Design& design);

/// (beta_1, ..., beta_{m'}) with beta_k = sum_{||t||_1 = k} (b_t / b_0)^2.
class BetaPattern {
 public:
  BetaPattern() = default;
  explicit BetaPattern(std::vector<double> values) : values_(std::move(values)) {}

  std::size_t size() const { return values_.size(); }
  /// beta_k; zero outside 1..m'.
  double operator()(int k) const {
    return (k >= 1 && static_cast<std::size_t>(k) <= values_.size()) ? values_[k - 1] : 0.0;
  }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

BetaPattern beta_pattern(const IndicatorCoefficients& coeffs);
BetaPattern beta_pattern(const Design& design);

/// Grid g(i, j) over i ones and j twos, reading zero outside its support.
/// For beta the support is i + j <= m; for xi it is i + j <= m - 1.
class SplitGrid {
 public:
  SplitGrid() = default;
  /// Support: i, j >= 0 and i + j <= limit.
  explicit SplitGrid(int limit) : limit_(limit), values_(static_cast<std::size_t>((limit + 1) * (limit + 1)), 0.0) {}

  int limit() const { return limit_; }
  bool in_support(int i, int j) const { return i >= 0 && j >= 0 && i + j <= limit_; }
  double operator()(int i, int j) const { return in_support(i, j) ? values_[i * (limit_ + 1) + j] : 0.0; }
  double& at(int i, int j);

 private:
  int limit_ = -1;
  std::vector<double> values_;
};

/// beta_{i,j} = sum over t with i ones and j twos of (b_t / b_0)^2. Requires all s_j = 3.
SplitGrid beta_split(const IndicatorCoefficients& coeffs);
SplitGrid beta_split(const Design& design);

/// xi_{i,j} = sum_l sum over t with t_l = 0 and i ones, j twos elsewhere of
/// (b_t / b_0) (b_{t|t_l=2} / b_0). Requires all s_j = 3.
SplitGrid xi_grid(const IndicatorCoefficients& coeffs);
SplitGrid xi_grid(const Design& design);

/// Throws LevelCountError unless every factor has 3 levels.
void require_three_levels(std::span<const int> level_counts, const char* what);

}  // namespace qscreen
