#include "sweep.hpp"

#include "qscreen/kernels.hpp"

namespace qscreen::detail {

void for_each_contrast(const Design& design, const BasisSet& bases, const TupleSpace& space,
                       const ColumnVisitor& visit) {
  const std::size_t n = design.runs();
  const std::size_t m = design.factors();
  const auto& kt = kernels::table(kernels::active());

  std::vector<std::vector<int>> cols(m);
  for (std::size_t j = 0; j < m; ++j) cols[j] = design.column(j);

  // prefix[j] = product of the first j factor contrasts for the current path.
  std::vector<std::vector<double>> prefix(m + 1, std::vector<double>(n));
  std::fill(prefix[0].begin(), prefix[0].end(), 1.0);
  std::vector<int> digit(m, 0);

  std::size_t index = 0;
  std::size_t depth = 0;
  // Iterative DFS over the mixed-radix digits, leaves in lexicographic order.
  while (true) {
    while (depth < m) {
      const auto row = bases[depth].contrast(digit[depth]);
      kt.scale_gather(prefix[depth].data(), row.data(), cols[depth].data(), prefix[depth + 1].data(), n);
      ++depth;
    }
    visit(index, prefix[m]);
    ++index;
    // Advance to the next tuple.
    while (depth > 0) {
      --depth;
      if (++digit[depth] < space.level_counts()[depth]) break;
      digit[depth] = 0;
      if (depth == 0) return;
    }
  }
}

std::vector<std::vector<double>> linear_columns(const Design& design, const BasisSet& bases) {
  std::vector<std::vector<double>> out(design.factors(), std::vector<double>(design.runs()));
  for (std::size_t l = 0; l < design.factors(); ++l) {
    const auto& basis = bases[l];
    for (std::size_t i = 0; i < design.runs(); ++i) out[l][i] = basis(1, design.at(i, l));
  }
  return out;
}

ContrastSums contrast_sums(const Design& design, const TupleSpace& space, bool with_cross) {
  const BasisSet bases(design.level_counts());
  const std::size_t m = design.factors();
  const auto& kt = kernels::table(kernels::active());

  ContrastSums out;
  out.sums.assign(space.size(), 0.0);
  std::vector<std::vector<double>> linear;
  if (with_cross) {
    linear = linear_columns(design, bases);
    out.linear_cross = Matrix(space.size(), m);
    out.linear_gram = Matrix(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        out.linear_gram(a, b) = kt.dot(linear[a].data(), linear[b].data(), design.runs());
  }
  for_each_contrast(design, bases, space, [&](std::size_t t, std::span<const double> col) {
    out.sums[t] = kt.sum(col.data(), col.size());
    if (with_cross) {
      auto row = out.linear_cross.row(t);
      for (std::size_t l = 0; l < m; ++l) row[l] = kt.dot(linear[l].data(), col.data(), col.size());
    }
  });
  return out;
}

}  // namespace qscreen::detail
