#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qscreen/design.hpp"

namespace qscreen {

/// Orthogonal polynomial contrasts c_0..c_{s-1} on the levels {0..s-1},
/// normalised so that sum_x c_u(x) c_v(x) = s * delta_uv.
///
/// c_u has degree exactly u with a positive leading coefficient. The
/// table is produced by exact rational Gram-Schmidt and each entry is
/// rounded to double once.
class OrthonormalBasis {
 public:
  explicit OrthonormalBasis(int levels);

  int levels() const { return levels_; }
  double operator()(int degree, int level) const { return values_[degree * levels_ + level]; }
  /// Values of c_degree at levels 0..s-1.
  std::span<const double> contrast(int degree) const {
    return {values_.data() + degree * levels_, static_cast<std::size_t>(levels_)};
  }

 private:
  int levels_;
  std::vector<double> values_;
};

/// Throws std::invalid_argument for s < 2.
OrthonormalBasis build_basis(int levels);

/// One basis per factor of a design (shared storage for equal level counts).
class BasisSet {
 public:
  explicit BasisSet(std::span<const int> level_counts);

  std::size_t factors() const { return index_.size(); }
  const OrthonormalBasis& operator[](std::size_t factor) const { return bases_[index_[factor]]; }

 private:
  std::vector<OrthonormalBasis> bases_;
  std::vector<std::size_t> index_;
};

/// C_t(x) = prod_j c_{t_j}(x_j).
double contrast_value(const BasisSet& bases, const ExponentTuple& t, std::span<const int> row);

/// The set T = S_1 x ... x S_m in lexicographic order on (t_1, ..., t_m),
/// t_1 most significant. Tuple indices are positions in that order.
class TupleSpace {
 public:
  static constexpr std::size_t kMaxFactors = 12;

  /// Throws std::invalid_argument beyond kMaxFactors factors.
  explicit TupleSpace(std::span<const int> level_counts);

  std::size_t factors() const { return levels_.size(); }
  std::size_t size() const { return size_; }
  std::span<const int> level_counts() const { return levels_; }

  ExponentTuple tuple(std::size_t index) const;
  std::size_t index(std::span<const int> entries) const;
  std::size_t index(const ExponentTuple& t) const { return index(std::span<const int>(t.entries)); }

  int norm0(std::size_t index) const { return norm0_[index]; }
  int norm1(std::size_t index) const { return norm1_[index]; }
  /// Entry of tuple `index` at factor j.
  int entry(std::size_t index, std::size_t j) const {
    return static_cast<int>((index / strides_[j]) % static_cast<std::size_t>(levels_[j]));
  }
  std::size_t stride(std::size_t j) const { return strides_[j]; }

  /// Index of the linear contrast of factor l (t = e_l).
  std::size_t linear_index(std::size_t factor) const { return strides_[factor]; }

  int max_degree() const;

 private:
  std::vector<int> levels_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 1;
  std::vector<int> norm0_;
  std::vector<int> norm1_;
};

/// Which contrast columns a ContrastMatrix holds.
struct ContrastSelection {
  enum class Kind { intercept, degree, split };

  Kind kind = Kind::intercept;
  int degree = 0;  // Kind::degree: ||t||_1
  int ones = 0;    // Kind::split: count of entries equal to 1
  int twos = 0;    // Kind::split: count of entries equal to 2

  static ContrastSelection intercept() { return {}; }
  static ContrastSelection by_degree(int k) { return {Kind::degree, k, 0, 0}; }
  static ContrastSelection by_split(int i, int j) { return {Kind::split, 0, i, j}; }

  /// True when the tuple with these norms belongs to the class.
  bool contains(int norm0, int norm1) const;
  std::string label() const;
};

/// n x c matrix of contrast columns X_t, stored column-major.
class ContrastMatrix {
 public:
  ContrastMatrix(std::size_t rows, ContrastSelection selection)
      : rows_(rows), selection_(selection) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return tuples_.size(); }
  const ContrastSelection& selection() const { return selection_; }
  const std::vector<ExponentTuple>& tuples() const { return tuples_; }

  std::span<const double> column(std::size_t c) const { return {values_.data() + c * rows_, rows_}; }
  double operator()(std::size_t r, std::size_t c) const { return values_[c * rows_ + r]; }

  void append(ExponentTuple t, std::span<const double> column);

 private:
  std::size_t rows_;
  ContrastSelection selection_;
  std::vector<ExponentTuple> tuples_;
  std::vector<double> values_;
};

ContrastMatrix contrast_matrix(const Design& design, const ContrastSelection& selection);

}  // namespace qscreen
