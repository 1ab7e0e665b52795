#include "qscreen/basis.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <stdexcept>

namespace qscreen {

namespace {

using Rational = boost::multiprecision::cpp_rational;

long double to_long_double(const Rational& q) { return q.convert_to<long double>(); }

}  // namespace

OrthonormalBasis::OrthonormalBasis(int levels) : levels_(levels) {
  if (levels < 2) throw std::invalid_argument("basis needs at least 2 levels, got " + std::to_string(levels));
  const int s = levels;

  // Monic orthogonal polynomials p_u evaluated at x = 0..s-1, exact.
  std::vector<std::vector<Rational>> p(s, std::vector<Rational>(s));
  std::vector<Rational> norms(s);
  for (int u = 0; u < s; ++u) {
    for (int x = 0; x < s; ++x) {
      Rational mono = 1;
      for (int e = 0; e < u; ++e) mono *= x;
      p[u][x] = mono;
    }
    for (int v = 0; v < u; ++v) {
      Rational proj = 0;
      for (int x = 0; x < s; ++x) proj += p[u][x] * p[v][x];
      proj /= norms[v];
      for (int x = 0; x < s; ++x) p[u][x] -= proj * p[v][x];
    }
    norms[u] = 0;
    for (int x = 0; x < s; ++x) norms[u] += p[u][x] * p[u][x];
  }

  // c_u(x) = p_u(x) * sqrt(s / |p_u|^2); square is rational, one sqrt and one rounding.
  values_.resize(static_cast<std::size_t>(s) * s);
  for (int u = 0; u < s; ++u) {
    for (int x = 0; x < s; ++x) {
      const Rational sq = Rational(s) * p[u][x] * p[u][x] / norms[u];
      long double mag = std::sqrt(to_long_double(sq));
      values_[u * s + x] = static_cast<double>(p[u][x] < 0 ? -mag : mag);
    }
  }
}

OrthonormalBasis build_basis(int levels) { return OrthonormalBasis(levels); }

BasisSet::BasisSet(std::span<const int> level_counts) {
  std::vector<int> seen;
  for (int s : level_counts) {
    std::size_t k = 0;
    while (k < seen.size() && seen[k] != s) ++k;
    if (k == seen.size()) {
      seen.push_back(s);
      bases_.emplace_back(s);
    }
    index_.push_back(k);
  }
}

double contrast_value(const BasisSet& bases, const ExponentTuple& t, std::span<const int> row) {
  if (t.size() != bases.factors() || row.size() != bases.factors()) {
    throw std::invalid_argument("tuple/row dimension mismatch");
  }
  double v = 1.0;
  for (std::size_t j = 0; j < t.size(); ++j) v *= bases[j](t[j], row[j]);
  return v;
}

// ---------------------------------------------------------------------------

TupleSpace::TupleSpace(std::span<const int> level_counts) : levels_(level_counts.begin(), level_counts.end()) {
  if (levels_.size() > kMaxFactors) {
    throw std::invalid_argument("tuple space limited to " + std::to_string(kMaxFactors) + " factors, got " +
                                std::to_string(levels_.size()));
  }
  strides_.assign(levels_.size(), 1);
  for (std::size_t j = levels_.size(); j-- > 0;) {
    strides_[j] = size_;
    size_ *= static_cast<std::size_t>(levels_[j]);
  }
  norm0_.resize(size_);
  norm1_.resize(size_);
  for (std::size_t idx = 0; idx < size_; ++idx) {
    int n0 = 0, n1 = 0;
    for (std::size_t j = 0; j < levels_.size(); ++j) {
      const int e = entry(idx, j);
      n0 += e != 0;
      n1 += e;
    }
    norm0_[idx] = n0;
    norm1_[idx] = n1;
  }
}

ExponentTuple TupleSpace::tuple(std::size_t index) const {
  ExponentTuple t;
  t.entries.resize(levels_.size());
  for (std::size_t j = 0; j < levels_.size(); ++j) t.entries[j] = entry(index, j);
  return t;
}

std::size_t TupleSpace::index(std::span<const int> entries) const {
  if (entries.size() != levels_.size()) throw std::invalid_argument("tuple has wrong length");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (entries[j] < 0 || entries[j] >= levels_[j]) throw std::invalid_argument("tuple entry out of range");
    idx += static_cast<std::size_t>(entries[j]) * strides_[j];
  }
  return idx;
}

int TupleSpace::max_degree() const {
  int d = 0;
  for (int s : levels_) d += s - 1;
  return d;
}

// ---------------------------------------------------------------------------

bool ContrastSelection::contains(int norm0, int norm1) const {
  switch (kind) {
    case Kind::intercept:
      return norm1 == 0;
    case Kind::degree:
      return norm1 == degree;
    case Kind::split:
      return norm0 == ones + twos && norm1 == ones + 2 * twos;
  }
  return false;
}

std::string ContrastSelection::label() const {
  switch (kind) {
    case Kind::intercept:
      return "Z0";
    case Kind::degree:
      return "Z" + std::to_string(degree);
    case Kind::split:
      return "Z(" + std::to_string(ones) + "," + std::to_string(twos) + ")";
  }
  return {};
}

void ContrastMatrix::append(ExponentTuple t, std::span<const double> column) {
  if (column.size() != rows_) throw std::invalid_argument("contrast column has wrong length");
  tuples_.push_back(std::move(t));
  values_.insert(values_.end(), column.begin(), column.end());
}

ContrastMatrix contrast_matrix(const Design& design, const ContrastSelection& selection) {
  const BasisSet bases(design.level_counts());
  const TupleSpace space(design.level_counts());
  ContrastMatrix out(design.runs(), selection);
  std::vector<double> col(design.runs());
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    if (!selection.contains(space.norm0(idx), space.norm1(idx))) continue;
    ExponentTuple t = space.tuple(idx);
    for (std::size_t i = 0; i < design.runs(); ++i) col[i] = contrast_value(bases, t, design.row(i));
    out.append(std::move(t), col);
  }
  return out;
}

}  // namespace qscreen
