#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qscreen/basis.hpp"
#include "qscreen/design.hpp"
#include "qscreen/indicator.hpp"
#include "qscreen/linalg.hpp"

namespace qscreen {

enum class ContaminationModel { linear_ols, general_mean, gls };

std::string_view name(ContaminationModel model);

/// (lambda_first, ..., lambda_{m'}). first_order is 2 for the linear-effect
/// models and 1 for the general-mean model.
class ContaminationPattern {
 public:
  ContaminationPattern() = default;
  ContaminationPattern(ContaminationModel model, int first_order, std::vector<double> values)
      : model_(model), first_order_(first_order), values_(std::move(values)) {}

  ContaminationModel model() const { return model_; }
  int first_order() const { return first_order_; }
  int last_order() const { return first_order_ + static_cast<int>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }
  /// lambda_k; zero outside first_order..m'.
  double operator()(int k) const {
    const int pos = k - first_order_;
    return (pos >= 0 && static_cast<std::size_t>(pos) < values_.size()) ? values_[pos] : 0.0;
  }
  std::span<const double> values() const { return values_; }

 private:
  ContaminationModel model_ = ContaminationModel::linear_ols;
  int first_order_ = 2;
  std::vector<double> values_;
};

/// A = (Z_1^T Z_1)^{-1} Z_1^T Z_class; rows are the m linear effects.
struct AliasMatrix {
  ContrastSelection selection;
  std::vector<ExponentTuple> tuples;
  Matrix values;

  /// ||A||^2 = tr(A^T A)
  double contamination() const { return values.frobenius_squared(); }
};

/// Throws SingularMatrixError (naming the collinear factors, 0-based in
/// dependent()) when Z_1^T Z_1 is singular.
AliasMatrix alias_matrix(const Design& design, const ContrastSelection& selection);

/// OLS contamination of k-th order effects on the linear effects, k = 2..m'.
ContaminationPattern contamination_pattern(const Design& design);

/// lambda_{i,j} = ||A_{i,j}||^2 over i + j <= m. 3-level designs only.
SplitGrid lambda_split(const Design& design);

/// General-mean model: A'_k = n^{-1} Z_0^T Z_k, k = 1..m'.
ContaminationPattern mean_contamination(const Design& design);

/// Symmetric positive definite n x n error covariance.
class Covariance {
 public:
  /// Throws NotPositiveDefiniteError if asymmetric or not SPD.
  explicit Covariance(Matrix sigma);

  std::size_t size() const { return sigma_.rows(); }
  const Matrix& matrix() const { return sigma_; }
  const Cholesky& factor() const { return chol_; }

 private:
  Matrix sigma_;
  Cholesky chol_;
};

/// GLS contamination with A*_k = (Z_1^T S^{-1} Z_1)^{-1} Z_1^T S^{-1} Z_k, k = 2..m'.
/// Uses the Cholesky factor of S; S is never inverted.
ContaminationPattern gls_contamination(const Design& design, const Covariance& sigma);

/// Beta and OLS contamination patterns from one contrast sweep.
struct DesignPatterns {
  BetaPattern beta;
  ContaminationPattern lambda;
};

DesignPatterns evaluate_patterns(const Design& design);

}  // namespace qscreen
