#include "qscreen/indicator.hpp"

#include <algorithm>
#include <string>

#include "sweep.hpp"

namespace qscreen {

IndicatorCoefficients::IndicatorCoefficients(TupleSpace space, std::size_t runs, std::vector<double> contrast_sums)
    : space_(std::move(space)), runs_(runs), sums_(std::move(contrast_sums)) {
  if (sums_.size() != space_.size()) throw std::invalid_argument("coefficient count does not match tuple space");
}

IndicatorCoefficients indicator_coefficients(const Design& design) {
  TupleSpace space(design.level_counts());
  auto sums = detail::contrast_sums(design, space, false);
  return IndicatorCoefficients(std::move(space), design.runs(), std::move(sums.sums));
}

BetaPattern beta_pattern(const IndicatorCoefficients& coeffs) {
  const auto& space = coeffs.space();
  std::vector<double> beta(static_cast<std::size_t>(space.max_degree()), 0.0);
  for (std::size_t t = 0; t < space.size(); ++t) {
    const int k = space.norm1(t);
    if (k == 0) continue;
    const double r = coeffs.ratio(t);
    beta[k - 1] += r * r;
  }
  return BetaPattern(std::move(beta));
}

BetaPattern beta_pattern(const Design& design) { return beta_pattern(indicator_coefficients(design)); }

// ---------------------------------------------------------------------------

double& SplitGrid::at(int i, int j) {
  if (!in_support(i, j)) throw std::out_of_range("split grid index outside support");
  return values_[i * (limit_ + 1) + j];
}

void require_three_levels(std::span<const int> level_counts, const char* what) {
  for (std::size_t j = 0; j < level_counts.size(); ++j) {
    if (level_counts[j] != 3) {
      throw LevelCountError(std::string(what) + " requires 3-level factors; factor " + std::to_string(j + 1) +
                            " has " + std::to_string(level_counts[j]));
    }
  }
}

namespace {

// Counts of entries equal to 1 and 2 in tuple t, skipping factor `skip`.
std::pair<int, int> ones_twos(const TupleSpace& space, std::size_t t, std::size_t skip) {
  int ones = 0, twos = 0;
  for (std::size_t j = 0; j < space.factors(); ++j) {
    if (j == skip) continue;
    const int e = space.entry(t, j);
    ones += e == 1;
    twos += e == 2;
  }
  return {ones, twos};
}

}  // namespace

SplitGrid beta_split(const IndicatorCoefficients& coeffs) {
  const auto& space = coeffs.space();
  require_three_levels(space.level_counts(), "beta_split");
  const int m = static_cast<int>(space.factors());
  SplitGrid grid(m);
  // t = 0 lands in (0,0), giving beta_{0,0} = 1.
  for (std::size_t t = 0; t < space.size(); ++t) {
    const auto [i, j] = ones_twos(space, t, space.factors());
    const double r = coeffs.ratio(t);
    grid.at(i, j) += r * r;
  }
  return grid;
}

SplitGrid beta_split(const Design& design) { return beta_split(indicator_coefficients(design)); }

SplitGrid xi_grid(const IndicatorCoefficients& coeffs) {
  const auto& space = coeffs.space();
  require_three_levels(space.level_counts(), "xi_grid");
  const int m = static_cast<int>(space.factors());
  SplitGrid grid(m - 1);
  for (std::size_t l = 0; l < space.factors(); ++l) {
    const std::size_t stride = space.stride(l);
    for (std::size_t t = 0; t < space.size(); ++t) {
      if (space.entry(t, l) != 0) continue;
      const auto [i, j] = ones_twos(space, t, l);
      grid.at(i, j) += coeffs.ratio(t) * coeffs.ratio(t + 2 * stride);
    }
  }
  return grid;
}

SplitGrid xi_grid(const Design& design) { return xi_grid(indicator_coefficients(design)); }

}  // namespace qscreen
