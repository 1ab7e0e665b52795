#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qscreen {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const { return data_; }

  Matrix transpose() const;
  /// Squared Frobenius norm, tr(A^T A).
  double frobenius_squared() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(double s, Matrix a);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// A symmetric system whose factorization found a negligible pivot.
/// `dependent` lists the (0-based) indices left unpivoted at that point.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, std::vector<std::size_t> dependent)
      : std::runtime_error(what), dependent_(std::move(dependent)) {}
  const std::vector<std::size_t>& dependent() const { return dependent_; }

 private:
  std::vector<std::size_t> dependent_;
};

class NotPositiveDefiniteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// P A P^T = L D L^T with diagonal (largest remaining pivot) pivoting, for
/// symmetric positive semidefinite A. Singular when the smallest pivot drops
/// below `relative_tolerance` times the largest.
class PivotedLdlt {
 public:
  static constexpr double kDefaultTolerance = 1e-10;

  explicit PivotedLdlt(const Matrix& a, double relative_tolerance = kDefaultTolerance);

  std::size_t size() const { return n_; }
  /// Solves A x = b in place.
  void solve_in_place(std::span<double> b) const;
  Matrix solve(const Matrix& b) const;
  std::span<const double> pivots() const { return d_; }

 private:
  std::size_t n_;
  std::vector<double> l_;  // unit lower, row-major n x n
  std::vector<double> d_;
  std::vector<std::size_t> perm_;  // position k holds original index
};

/// A = L L^T for symmetric positive definite A (no pivoting).
class Cholesky {
 public:
  /// Throws NotPositiveDefiniteError for an asymmetric (beyond
  /// `symmetry_tolerance`, relative to the largest entry) or non-SPD matrix.
  explicit Cholesky(const Matrix& a, double symmetry_tolerance = 1e-12);

  std::size_t size() const { return n_; }
  /// x <- L^{-1} x
  void forward_in_place(std::span<double> x) const;
  /// Columns of B replaced by L^{-1} B.
  Matrix forward(const Matrix& b) const;

 private:
  std::size_t n_;
  std::vector<double> l_;
};

}  // namespace qscreen
