#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qscreen/contamination.hpp"
#include "qscreen/design.hpp"
#include "qscreen/indicator.hpp"

namespace qscreen {

inline constexpr double kPatternTolerance = 1e-9;

enum class Ordering { less, equal, greater };

/// Sequential (lexicographic) comparison; the first position where the
/// values differ by more than eps decides. Throws on length mismatch.
Ordering lex_compare(std::span<const double> a, std::span<const double> b, double eps = kPatternTolerance);

enum class Criterion { beta, lambda };
enum class DedupRule { both, either };
enum class PermutationSetKind { identity, cyclic, all };

std::string_view name(Criterion c);
Criterion parse_criterion(std::string_view text);
DedupRule parse_dedup(std::string_view text);
PermutationSetKind parse_permutation_set(std::string_view text);

/// Level maps tried for an s-level column, identity first. `cyclic` gives
/// the s shifts x -> x + c mod s, `all` every bijection (s <= 8).
std::vector<std::vector<int>> permutation_set(PermutationSetKind kind, int levels);

struct CatalogEntry {
  std::vector<std::size_t> columns;       // 0-based base columns
  std::vector<std::vector<int>> images;   // level map per selected column
  Design design;
  BetaPattern beta;
  ContaminationPattern lambda;
  int rank_beta = 0;
  int rank_lambda = 0;

  /// e.g. "1:201,2,5" (1-based columns, non-identity maps appended).
  std::string label() const;
  int rank(Criterion c) const { return c == Criterion::beta ? rank_beta : rank_lambda; }
};

/// A design derived from a base array: chosen columns, then a level map per column.
struct DerivedDesign {
  std::vector<std::size_t> columns;
  std::vector<std::vector<int>> images;
  Design design;
};

/// Every m-column subset of `base` (lexicographic) crossed with every
/// assignment of per-column level maps, last column's map varying fastest.
std::vector<DerivedDesign> derive_designs(const Design& base, std::size_t m, PermutationSetKind kind);

struct Catalog {
  std::vector<CatalogEntry> entries;
  std::size_t raw_count = 0;  // evaluated designs before deduplication
};

struct EnumerateOptions {
  PermutationSetKind permutations = PermutationSetKind::cyclic;
  DedupRule dedup = DedupRule::both;
  double eps = kPatternTolerance;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// derive_designs() evaluated and deduplicated in enumeration order (the
/// first representative is kept), then ranked under both criteria.
Catalog enumerate(const Design& base, std::size_t m, const EnumerateOptions& options = {});

/// Builds an entry for a design directly (columns 1..m, identity maps).
CatalogEntry make_entry(const Design& design);

/// Dense ranks: patterns sorted by lex_compare, ties (equal within eps) share a rank.
Catalog rank(Catalog catalog, Criterion criterion, double eps = kPatternTolerance);
Catalog rank_both(Catalog catalog, double eps = kPatternTolerance);

struct ConsistencyReport {
  std::size_t total = 0;
  std::size_t consistent = 0;
  double rate = 0.0;
};

/// Throws std::invalid_argument for an empty catalog.
ConsistencyReport consistency_rate(const Catalog& catalog);

/// Rank-1 entries. Throws std::invalid_argument for an empty catalog.
std::vector<CatalogEntry> best(const Catalog& catalog, Criterion criterion);

}  // namespace qscreen
