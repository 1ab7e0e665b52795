#include "qscreen/design.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace qscreen {

std::vector<int> Design::column(std::size_t factor) const {
  std::vector<int> out(runs_);
  for (std::size_t i = 0; i < runs_; ++i) out[i] = at(i, factor);
  return out;
}

std::uint64_t Design::full_factorial_size() const {
  std::uint64_t n = 1;
  for (int s : level_counts_) n *= static_cast<std::uint64_t>(s);
  return n;
}

int Design::max_degree() const {
  int d = 0;
  for (int s : level_counts_) d += s - 1;
  return d;
}

bool Design::all_levels(int s) const {
  return std::all_of(level_counts_.begin(), level_counts_.end(), [s](int v) { return v == s; });
}

Design validate(std::vector<int> cells, std::size_t runs, std::vector<int> level_counts) {
  const std::size_t m = level_counts.size();
  if (runs == 0) throw DesignError("design has no runs");
  if (m == 0) throw DesignError("design has no factors");
  if (cells.size() != runs * m) {
    throw DesignError("cell count " + std::to_string(cells.size()) + " does not match " +
                      std::to_string(runs) + " x " + std::to_string(m));
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (level_counts[j] < 2) {
      throw DesignError("factor " + std::to_string(j + 1) + " has fewer than 2 levels");
    }
  }
  for (std::size_t i = 0; i < runs; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const int v = cells[i * m + j];
      if (v < 0 || v >= level_counts[j]) {
        throw DesignError("run " + std::to_string(i + 1) + ", factor " + std::to_string(j + 1) +
                          ": level " + std::to_string(v) + " outside 0.." +
                          std::to_string(level_counts[j] - 1));
      }
    }
  }
  Design d;
  d.runs_ = runs;
  d.level_counts_ = std::move(level_counts);
  d.cells_ = std::move(cells);
  return d;
}

Design validate(const std::vector<std::vector<int>>& rows, std::vector<int> level_counts) {
  const std::size_t m = level_counts.size();
  std::vector<int> cells;
  cells.reserve(rows.size() * m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m) {
      throw DesignError("run " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                        " entries, expected " + std::to_string(m));
    }
    cells.insert(cells.end(), rows[i].begin(), rows[i].end());
  }
  return validate(std::move(cells), rows.size(), std::move(level_counts));
}

// ---------------------------------------------------------------------------

bool is_bijection(std::span<const int> image) {
  std::vector<char> seen(image.size(), 0);
  for (int v : image) {
    if (v < 0 || static_cast<std::size_t>(v) >= image.size() || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

LevelPermutation LevelPermutation::identity(std::span<const int> level_counts) {
  LevelPermutation p;
  p.images_.reserve(level_counts.size());
  for (int s : level_counts) {
    std::vector<int> img(s);
    std::iota(img.begin(), img.end(), 0);
    p.images_.push_back(std::move(img));
  }
  return p;
}

void LevelPermutation::set(std::size_t factor, std::vector<int> image) {
  if (factor >= images_.size()) {
    throw DesignError("permutation factor " + std::to_string(factor + 1) + " out of range");
  }
  if (image.size() != images_[factor].size()) {
    throw DesignError("permutation for factor " + std::to_string(factor + 1) + " has " +
                      std::to_string(image.size()) + " entries, expected " +
                      std::to_string(images_[factor].size()));
  }
  if (!is_bijection(image)) {
    throw DesignError("permutation for factor " + std::to_string(factor + 1) + " is not a bijection");
  }
  images_[factor] = std::move(image);
}

std::vector<int> LevelPermutation::parse_image(const std::string& text) {
  std::vector<int> img;
  if (text.find(',') != std::string::npos) {
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        img.push_back(std::stoi(tok));
      } catch (const std::exception&) {
        throw DesignError("bad permutation entry '" + tok + "'");
      }
    }
  } else {
    for (char c : text) {
      if (c < '0' || c > '9') throw DesignError("bad permutation '" + text + "'");
      img.push_back(c - '0');
    }
  }
  if (img.empty() || !is_bijection(img)) throw DesignError("permutation '" + text + "' is not a bijection");
  return img;
}

std::string LevelPermutation::format_image(std::span<const int> image) {
  const bool compact = image.size() <= 10;
  std::string out;
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += std::to_string(image[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

int ExponentTuple::norm0() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](int v) { return v != 0; }));
}

int ExponentTuple::norm1() const { return std::accumulate(entries.begin(), entries.end(), 0); }

// ---------------------------------------------------------------------------

namespace {

bool projection_balanced(const Design& d, std::span<const std::size_t> cols) {
  std::uint64_t cells = 1;
  for (auto c : cols) cells *= static_cast<std::uint64_t>(d.level_count(c));
  if (d.runs() % cells != 0) return false;
  std::vector<std::size_t> counts(cells, 0);
  for (std::size_t i = 0; i < d.runs(); ++i) {
    std::uint64_t key = 0;
    for (auto c : cols) key = key * d.level_count(c) + d.at(i, c);
    ++counts[key];
  }
  const std::size_t want = d.runs() / cells;
  return std::all_of(counts.begin(), counts.end(), [want](std::size_t c) { return c == want; });
}

// Visits every r-subset of {0..m-1} in lexicographic order; stops when fn returns false.
template <typename Fn>
bool for_each_subset(std::size_t m, std::size_t r, Fn&& fn) {
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!fn(std::span<const std::size_t>(idx))) return false;
    std::size_t k = r;
    while (k > 0 && idx[k - 1] == m - r + k - 1) --k;
    if (k == 0) return true;
    ++idx[k - 1];
    for (std::size_t j = k; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

int strength(const Design& design) {
  const std::size_t m = design.factors();
  int r = 0;
  for (std::size_t t = 1; t <= m; ++t) {
    const bool ok = for_each_subset(m, t, [&](std::span<const std::size_t> cols) {
      return projection_balanced(design, cols);
    });
    if (!ok) break;
    r = static_cast<int>(t);
  }
  return r;
}

Design apply_permutation(const Design& design, const LevelPermutation& perm) {
  if (perm.factors() != design.factors()) {
    throw DesignError("permutation covers " + std::to_string(perm.factors()) + " factors, design has " +
                      std::to_string(design.factors()));
  }
  for (std::size_t j = 0; j < design.factors(); ++j) {
    if (perm.image(j).size() != static_cast<std::size_t>(design.level_count(j))) {
      throw DesignError("permutation for factor " + std::to_string(j + 1) + " has wrong level count");
    }
  }
  std::vector<int> cells;
  cells.reserve(design.runs() * design.factors());
  for (std::size_t i = 0; i < design.runs(); ++i) {
    for (std::size_t j = 0; j < design.factors(); ++j) cells.push_back(perm(j, design.at(i, j)));
  }
  return validate(std::move(cells), design.runs(),
                  {design.level_counts().begin(), design.level_counts().end()});
}

Design mirror_image(const Design& design) {
  std::vector<int> cells;
  cells.reserve(design.runs() * design.factors());
  for (std::size_t i = 0; i < design.runs(); ++i) {
    for (std::size_t j = 0; j < design.factors(); ++j) {
      cells.push_back(design.level_count(j) - 1 - design.at(i, j));
    }
  }
  return validate(std::move(cells), design.runs(),
                  {design.level_counts().begin(), design.level_counts().end()});
}

bool same_runs(const Design& a, const Design& b) {
  if (a.runs() != b.runs() || a.factors() != b.factors()) return false;
  if (!std::equal(a.level_counts().begin(), a.level_counts().end(), b.level_counts().begin())) return false;
  std::map<std::vector<int>, long> tally;
  for (std::size_t i = 0; i < a.runs(); ++i) {
    auto r = a.row(i);
    ++tally[{r.begin(), r.end()}];
  }
  for (std::size_t i = 0; i < b.runs(); ++i) {
    auto r = b.row(i);
    auto it = tally.find({r.begin(), r.end()});
    if (it == tally.end() || it->second == 0) return false;
    --it->second;
  }
  return true;
}

bool is_mirror_symmetric(const Design& design) { return same_runs(design, mirror_image(design)); }

Design column_subset(const Design& design, std::span<const std::size_t> indices) {
  if (indices.empty()) throw DesignError("column subset is empty");
  std::vector<char> used(design.factors(), 0);
  for (auto c : indices) {
    if (c >= design.factors()) {
      throw DesignError("column " + std::to_string(c + 1) + " out of range (design has " +
                        std::to_string(design.factors()) + ")");
    }
    if (used[c]) throw DesignError("column " + std::to_string(c + 1) + " selected twice");
    used[c] = 1;
  }
  std::vector<int> cells;
  cells.reserve(design.runs() * indices.size());
  std::vector<int> levels;
  for (auto c : indices) levels.push_back(design.level_count(c));
  for (std::size_t i = 0; i < design.runs(); ++i) {
    for (auto c : indices) cells.push_back(design.at(i, c));
  }
  return validate(std::move(cells), design.runs(), std::move(levels));
}

}  // namespace qscreen
