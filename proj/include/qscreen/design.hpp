#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qscreen {

/// Raised for malformed design matrices, permutations, and column selections.
class DesignError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An n-run, m-factor design with integer levels 0..s_j-1. Rows are runs.
///
/// Instances are immutable once built; the only way to obtain one is
/// through validate(), which enforces the level-range invariant.
class Design {
 public:
  Design() = default;

  std::size_t runs() const { return runs_; }
  std::size_t factors() const { return level_counts_.size(); }
  std::span<const int> level_counts() const { return level_counts_; }
  int level_count(std::size_t factor) const { return level_counts_[factor]; }

  int at(std::size_t run, std::size_t factor) const { return cells_[run * factors() + factor]; }
  std::span<const int> row(std::size_t run) const {
    return {cells_.data() + run * factors(), factors()};
  }
  std::vector<int> column(std::size_t factor) const;

  /// Size of the full factorial s_1 x ... x s_m.
  std::uint64_t full_factorial_size() const;

  /// Sum of (s_j - 1): the highest polynomial degree of any contrast.
  int max_degree() const;

  bool all_levels(int s) const;

  /// Exact equality including run order.
  friend bool operator==(const Design&, const Design&) = default;

 private:
  friend Design validate(std::vector<int> cells, std::size_t runs, std::vector<int> level_counts);

  std::size_t runs_ = 0;
  std::vector<int> level_counts_;
  std::vector<int> cells_;
};

/// Builds a Design from row-major cells. Throws DesignError on any violation.
Design validate(std::vector<int> cells, std::size_t runs, std::vector<int> level_counts);
Design validate(const std::vector<std::vector<int>>& rows, std::vector<int> level_counts);

/// Per-factor bijection on the level set.
class LevelPermutation {
 public:
  static LevelPermutation identity(std::span<const int> level_counts);

  /// Replaces the map for one factor; `image[x]` is where level x goes.
  void set(std::size_t factor, std::vector<int> image);

  std::size_t factors() const { return images_.size(); }
  std::span<const int> image(std::size_t factor) const { return images_[factor]; }
  int operator()(std::size_t factor, int level) const { return images_[factor][level]; }

  /// Parses the compact "image of 0..s-1" form, e.g. "201" for {0,1,2}->{2,0,1}.
  static std::vector<int> parse_image(const std::string& text);
  static std::string format_image(std::span<const int> image);

 private:
  std::vector<std::vector<int>> images_;
};

bool is_bijection(std::span<const int> image);

/// Exponent tuple t with 0 <= t_j <= s_j - 1.
struct ExponentTuple {
  std::vector<int> entries;

  int norm0() const;
  int norm1() const;
  std::size_t size() const { return entries.size(); }
  int operator[](std::size_t j) const { return entries[j]; }

  friend bool operator==(const ExponentTuple&, const ExponentTuple&) = default;
};

/// Largest r such that every r-column projection is equireplicated; 0 if none.
int strength(const Design& design);

Design apply_permutation(const Design& design, const LevelPermutation& perm);
Design mirror_image(const Design& design);

/// Run-multiset equality; run order is ignored.
bool same_runs(const Design& a, const Design& b);
bool is_mirror_symmetric(const Design& design);

Design column_subset(const Design& design, std::span<const std::size_t> indices);

}  // namespace qscreen
