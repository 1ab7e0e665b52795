#include "qscreen/contamination.hpp"

#include <algorithm>
#include <string>

#include "qscreen/kernels.hpp"
#include "sweep.hpp"

namespace qscreen {

std::string_view name(ContaminationModel model) {
  switch (model) {
    case ContaminationModel::linear_ols:
      return "linear";
    case ContaminationModel::general_mean:
      return "mean";
    case ContaminationModel::gls:
      return "gls";
  }
  return "unknown";
}

namespace {

PivotedLdlt factor_linear_gram(const Matrix& gram) {
  try {
    return PivotedLdlt(gram);
  } catch (const SingularMatrixError& e) {
    std::string msg = "linear contrasts are collinear; Z1'Z1 is singular (factors";
    for (auto c : e.dependent()) msg += " X" + std::to_string(c + 1);
    msg += ")";
    throw SingularMatrixError(msg, e.dependent());
  }
}

// Accumulates ||solve(row)||^2 for each tuple row into the bucket `bucket(t)`.
template <typename Bucket>
void accumulate_alias(const Matrix& cross, const PivotedLdlt& gram, Bucket&& bucket) {
  std::vector<double> a(cross.cols());
  for (std::size_t t = 0; t < cross.rows(); ++t) {
    double* slot = bucket(t);
    if (slot == nullptr) continue;
    auto row = cross.row(t);
    std::copy(row.begin(), row.end(), a.begin());
    gram.solve_in_place(a);
    *slot += kernels::dot(a, a);
  }
}

std::vector<double> ols_by_degree(const TupleSpace& space, const detail::ContrastSums& sums) {
  const int top = space.max_degree();
  std::vector<double> lambda(static_cast<std::size_t>(std::max(top - 1, 0)), 0.0);
  const PivotedLdlt gram = factor_linear_gram(sums.linear_gram);
  accumulate_alias(sums.linear_cross, gram, [&](std::size_t t) -> double* {
    const int k = space.norm1(t);
    return k >= 2 ? &lambda[k - 2] : nullptr;
  });
  return lambda;
}

}  // namespace

AliasMatrix alias_matrix(const Design& design, const ContrastSelection& selection) {
  // Rows follow factor order (Z_1 column l is the linear contrast of factor l).
  const auto z1 = detail::linear_columns(design, BasisSet(design.level_counts()));
  const ContrastMatrix zc = contrast_matrix(design, selection);
  const std::size_t m = z1.size();

  Matrix gram(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) gram(a, b) = kernels::dot(z1[a], z1[b]);
  Matrix cross(m, zc.cols());
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t c = 0; c < zc.cols(); ++c) cross(a, c) = kernels::dot(z1[a], zc.column(c));

  return AliasMatrix{selection, zc.tuples(), factor_linear_gram(gram).solve(cross)};
}

ContaminationPattern contamination_pattern(const Design& design) {
  const TupleSpace space(design.level_counts());
  const auto sums = detail::contrast_sums(design, space, true);
  return ContaminationPattern(ContaminationModel::linear_ols, 2, ols_by_degree(space, sums));
}

SplitGrid lambda_split(const Design& design) {
  require_three_levels(design.level_counts(), "lambda_split");
  const TupleSpace space(design.level_counts());
  const auto sums = detail::contrast_sums(design, space, true);
  const PivotedLdlt gram = factor_linear_gram(sums.linear_gram);
  SplitGrid grid(static_cast<int>(design.factors()));
  accumulate_alias(sums.linear_cross, gram, [&](std::size_t t) -> double* {
    int ones = 0, twos = 0;
    for (std::size_t j = 0; j < space.factors(); ++j) {
      const int e = space.entry(t, j);
      ones += e == 1;
      twos += e == 2;
    }
    return &grid.at(ones, twos);
  });
  return grid;
}

ContaminationPattern mean_contamination(const Design& design) {
  const TupleSpace space(design.level_counts());
  const BasisSet bases(design.level_counts());
  const std::vector<double> ones(design.runs(), 1.0);
  const double n = static_cast<double>(design.runs());
  std::vector<double> lambda(static_cast<std::size_t>(space.max_degree()), 0.0);
  detail::for_each_contrast(design, bases, space, [&](std::size_t t, std::span<const double> col) {
    const int k = space.norm1(t);
    if (k == 0) return;
    const double a = kernels::dot(ones, col) / n;
    lambda[k - 1] += a * a;
  });
  return ContaminationPattern(ContaminationModel::general_mean, 1, std::move(lambda));
}

// ---------------------------------------------------------------------------

Covariance::Covariance(Matrix sigma) : sigma_(std::move(sigma)), chol_(sigma_) {}

ContaminationPattern gls_contamination(const Design& design, const Covariance& sigma) {
  const std::size_t n = design.runs();
  const std::size_t m = design.factors();
  if (sigma.size() != n) {
    throw std::invalid_argument("covariance is " + std::to_string(sigma.size()) + "x" +
                                std::to_string(sigma.size()) + " but design has " + std::to_string(n) + " runs");
  }
  const TupleSpace space(design.level_counts());
  const BasisSet bases(design.level_counts());

  // Whitened linear columns W = L^{-1} Z_1.
  auto linear = detail::linear_columns(design, bases);
  for (auto& col : linear) sigma.factor().forward_in_place(col);
  Matrix gram(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) gram(a, b) = kernels::dot(linear[a], linear[b]);
  const PivotedLdlt reduced = factor_linear_gram(gram);

  const int top = space.max_degree();
  std::vector<double> lambda(static_cast<std::size_t>(std::max(top - 1, 0)), 0.0);
  std::vector<double> white(n), a(m);
  detail::for_each_contrast(design, bases, space, [&](std::size_t t, std::span<const double> col) {
    const int k = space.norm1(t);
    if (k < 2) return;
    std::copy(col.begin(), col.end(), white.begin());
    sigma.factor().forward_in_place(white);
    for (std::size_t l = 0; l < m; ++l) a[l] = kernels::dot(linear[l], white);
    reduced.solve_in_place(a);
    lambda[k - 2] += kernels::dot(a, a);
  });
  return ContaminationPattern(ContaminationModel::gls, 2, std::move(lambda));
}

DesignPatterns evaluate_patterns(const Design& design) {
  const TupleSpace space(design.level_counts());
  auto sums = detail::contrast_sums(design, space, true);
  auto lambda = ols_by_degree(space, sums);
  IndicatorCoefficients coeffs(space, design.runs(), std::move(sums.sums));
  return DesignPatterns{beta_pattern(coeffs), ContaminationPattern(ContaminationModel::linear_ols, 2, std::move(lambda))};
}

}  // namespace qscreen
