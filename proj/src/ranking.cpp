#include "qscreen/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace qscreen {

Ordering lex_compare(std::span<const double> a, std::span<const double> b, double eps) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("pattern lengths differ (" + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()) + ")");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > eps) return a[i] < b[i] ? Ordering::less : Ordering::greater;
  }
  return Ordering::equal;
}

std::string_view name(Criterion c) { return c == Criterion::beta ? "beta" : "lambda"; }

Criterion parse_criterion(std::string_view text) {
  if (text == "beta") return Criterion::beta;
  if (text == "lambda") return Criterion::lambda;
  throw std::invalid_argument("unknown criterion '" + std::string(text) + "'");
}

DedupRule parse_dedup(std::string_view text) {
  if (text == "both") return DedupRule::both;
  if (text == "either") return DedupRule::either;
  throw std::invalid_argument("unknown dedup rule '" + std::string(text) + "'");
}

PermutationSetKind parse_permutation_set(std::string_view text) {
  if (text == "identity") return PermutationSetKind::identity;
  if (text == "cyclic") return PermutationSetKind::cyclic;
  if (text == "all") return PermutationSetKind::all;
  throw std::invalid_argument("unknown permutation set '" + std::string(text) + "'");
}

std::vector<std::vector<int>> permutation_set(PermutationSetKind kind, int levels) {
  std::vector<int> id(levels);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> out;
  switch (kind) {
    case PermutationSetKind::identity:
      out.push_back(id);
      break;
    case PermutationSetKind::cyclic:
      for (int c = 0; c < levels; ++c) {
        std::vector<int> img(levels);
        for (int x = 0; x < levels; ++x) img[x] = (x + c) % levels;
        out.push_back(std::move(img));
      }
      break;
    case PermutationSetKind::all:
      if (levels > 8) throw std::invalid_argument("all-permutation set limited to 8 levels");
      do {
        out.push_back(id);
      } while (std::next_permutation(id.begin(), id.end()));
      break;
  }
  return out;
}

std::string CatalogEntry::label() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (c > 0) out += ',';
    out += std::to_string(columns[c] + 1);
    const auto& img = images[c];
    bool identity = true;
    for (std::size_t x = 0; x < img.size(); ++x) identity = identity && img[x] == static_cast<int>(x);
    if (!identity) out += ":" + LevelPermutation::format_image(img);
  }
  return out;
}

namespace {

std::span<const double> pattern_of(const CatalogEntry& e, Criterion c) {
  return c == Criterion::beta ? e.beta.values() : e.lambda.values();
}

bool same(const CatalogEntry& a, const CatalogEntry& b, Criterion c, double eps) {
  return lex_compare(pattern_of(a, c), pattern_of(b, c), eps) == Ordering::equal;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t m) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    std::size_t k = m;
    while (k > 0 && idx[k - 1] == n - m + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Mixed-radix increment, last position fastest. False once it wraps around.
template <typename Radix>
bool advance(std::vector<std::size_t>& digits, Radix&& radix) {
  for (std::size_t k = digits.size(); k-- > 0;) {
    if (++digits[k] < radix(k)) return true;
    digits[k] = 0;
  }
  return false;
}

}  // namespace

CatalogEntry make_entry(const Design& design) {
  CatalogEntry e;
  for (std::size_t j = 0; j < design.factors(); ++j) {
    e.columns.push_back(j);
    std::vector<int> id(design.level_count(j));
    std::iota(id.begin(), id.end(), 0);
    e.images.push_back(std::move(id));
  }
  auto pats = evaluate_patterns(design);
  e.design = design;
  e.beta = std::move(pats.beta);
  e.lambda = std::move(pats.lambda);
  return e;
}

std::vector<DerivedDesign> derive_designs(const Design& base, std::size_t m, PermutationSetKind kind) {
  if (m < 1 || m > base.factors()) {
    throw std::invalid_argument("m must be in 1.." + std::to_string(base.factors()) + ", got " + std::to_string(m));
  }
  std::vector<std::vector<std::vector<int>>> maps(base.factors());
  for (std::size_t j = 0; j < base.factors(); ++j) maps[j] = permutation_set(kind, base.level_count(j));

  std::vector<DerivedDesign> out;
  for (auto& cols : subsets(base.factors(), m)) {
    const Design sub = column_subset(base, cols);
    std::vector<std::size_t> choice(m, 0);
    do {
      DerivedDesign d{cols, {}, {}};
      auto perm = LevelPermutation::identity(sub.level_counts());
      for (std::size_t c = 0; c < m; ++c) {
        d.images.push_back(maps[cols[c]][choice[c]]);
        perm.set(c, d.images.back());
      }
      d.design = apply_permutation(sub, perm);
      out.push_back(std::move(d));
    } while (advance(choice, [&](std::size_t c) { return maps[cols[c]].size(); }));
  }
  return out;
}

Catalog enumerate(const Design& base, std::size_t m, const EnumerateOptions& options) {
  auto jobs = derive_designs(base, m, options.permutations);
  std::vector<CatalogEntry> evaluated(jobs.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      CatalogEntry e = make_entry(jobs[t].design);
      e.columns = std::move(jobs[t].columns);
      e.images = std::move(jobs[t].images);
      evaluated[t] = std::move(e);
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs.size()));
  if (threads <= 1) {
    work(0, jobs.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (jobs.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t b = w * chunk, e = std::min(jobs.size(), b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }

  Catalog cat;
  cat.raw_count = evaluated.size();
  for (auto& e : evaluated) {
    const auto duplicate = [&](const CatalogEntry& kept) {
      const bool b = same(kept, e, Criterion::beta, options.eps);
      const bool l = same(kept, e, Criterion::lambda, options.eps);
      return options.dedup == DedupRule::both ? b && l : b || l;
    };
    if (std::any_of(cat.entries.begin(), cat.entries.end(), duplicate)) continue;
    cat.entries.push_back(std::move(e));
  }
  return rank_both(std::move(cat), options.eps);
}

Catalog rank(Catalog catalog, Criterion criterion, double eps) {
  auto& entries = catalog.entries;
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), 0);
  const auto cmp = [&](std::size_t a, std::size_t b) {
    return lex_compare(pattern_of(entries[a], criterion), pattern_of(entries[b], criterion), eps);
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cmp(a, b) == Ordering::less; });
  int r = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || cmp(order[i - 1], order[i]) != Ordering::equal) ++r;
    (criterion == Criterion::beta ? entries[order[i]].rank_beta : entries[order[i]].rank_lambda) = r;
  }
  return catalog;
}

Catalog rank_both(Catalog catalog, double eps) {
  return rank(rank(std::move(catalog), Criterion::beta, eps), Criterion::lambda, eps);
}

ConsistencyReport consistency_rate(const Catalog& catalog) {
  if (catalog.entries.empty()) throw std::invalid_argument("consistency rate of an empty catalog");
  ConsistencyReport r;
  r.total = catalog.entries.size();
  for (const auto& e : catalog.entries) r.consistent += e.rank_beta == e.rank_lambda;
  r.rate = static_cast<double>(r.consistent) / static_cast<double>(r.total);
  return r;
}

std::vector<CatalogEntry> best(const Catalog& catalog, Criterion criterion) {
  if (catalog.entries.empty()) throw std::invalid_argument("best of an empty catalog");
  std::vector<CatalogEntry> out;
  for (const auto& e : catalog.entries) {
    if (e.rank(criterion) == 1) out.push_back(e);
  }
  return out;
}

}  // namespace qscreen
