#pragma once

// Single pass over every contrast column X_t of a design, in tuple order.

#include <functional>
#include <span>
#include <vector>

#include "qscreen/basis.hpp"
#include "qscreen/design.hpp"
#include "qscreen/linalg.hpp"

namespace qscreen::detail {

using ColumnVisitor = std::function<void(std::size_t tuple_index, std::span<const double> column)>;

/// Calls `visit` for every tuple of `space` (lexicographic) with X_t over the
/// design's runs. Columns are built as running products of per-factor
/// contrast rows, one scale_gather per tree edge.
void for_each_contrast(const Design& design, const BasisSet& bases, const TupleSpace& space,
                       const ColumnVisitor& visit);

/// Linear contrast columns X_{e_l}, one per factor (n x m, column l = factor l).
std::vector<std::vector<double>> linear_columns(const Design& design, const BasisSet& bases);

/// Per-tuple inner products shared by the beta and contamination paths.
struct ContrastSums {
  std::vector<double> sums;  // sum over runs of C_t(x), per tuple
  Matrix linear_cross;       // row t: Z_1^T X_t
  Matrix linear_gram;        // Z_1^T Z_1
};

ContrastSums contrast_sums(const Design& design, const TupleSpace& space, bool with_cross);

}  // namespace qscreen::detail
