#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "qscreen/builtin.hpp"
#include "qscreen/indicator.hpp"
#include "reference_designs.hpp"

using namespace qscreen;

namespace {

void check_printed(const BetaPattern& b, const std::vector<double>& printed) {
  REQUIRE(b.size() == printed.size());
  for (std::size_t k = 0; k < printed.size(); ++k) {
    CAPTURE(k + 1);
    CHECK(oracle::matches_printed(b(static_cast<int>(k + 1)), printed[k]));
  }
}

void check_close(const BetaPattern& a, const BetaPattern& b, double tol) {
  REQUIRE(a.size() == b.size());
  for (std::size_t k = 1; k <= a.size(); ++k) CHECK(std::abs(a(k) - b(k)) < tol);
}

double ratio_oracle(const Design& d, const std::vector<int>& t) {
  const auto col = oracle::column(d, t);
  return std::accumulate(col.begin(), col.end(), 0.0) / static_cast<double>(d.runs());
}

std::pair<int, int> ones_twos(const std::vector<int>& t) {
  int i = 0, j = 0;
  for (int e : t) {
    i += e == 1;
    j += e == 2;
  }
  return {i, j};
}

}  // namespace

TEST_CASE("beta patterns of the two 18-run arrays match the tabulated values") {
  check_printed(beta_pattern(refdesign::d1()), {0, 0, 0.281, 0.797, 1.406, 0.313, 0.563, 0.141});
  check_printed(beta_pattern(refdesign::d2()), {0, 0, 0.281, 0.844, 1.406, 0.781, 0.188, 0});
}

TEST_CASE("beta pattern agrees with the brute-force evaluator") {
  const auto& l18 = builtin_design("L18").design;
  std::vector<Design> designs{refdesign::d1(), refdesign::d2(), refdesign::d1_prime(), refdesign::oa27_strength3(),
                              column_subset(l18, std::vector<std::size_t>{0, 1, 2, 4, 6})};
  for (const auto& d : designs) {
    const auto b = beta_pattern(d);
    const auto ref = oracle::beta(d);
    REQUIRE(b.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(std::abs(b(static_cast<int>(k + 1)) - ref[k]) < 1e-12);
  }
}

TEST_CASE("coefficient ratios equal the mean of each contrast column") {
  const Design d = refdesign::d2();
  const auto c = indicator_coefficients(d);
  CHECK(c.b0() == doctest::Approx(18.0 / 81.0));
  for (std::size_t i = 0; i < c.space().size(); ++i) {
    const auto t = c.space().tuple(i);
    CHECK(std::abs(c.ratio(i) - ratio_oracle(d, t.entries)) < 1e-10);
    CHECK(std::abs(c.b(t) / c.b0() - c.ratio(t)) < 1e-12);
  }
}

TEST_CASE("total aberration equals N/n - 1 for designs without repeated runs") {
  for (const auto& d : {refdesign::d1(), refdesign::d2(), refdesign::oa27_strength3()}) {
    const auto b = beta_pattern(d);
    double total = 0.0;
    for (std::size_t k = 1; k <= b.size(); ++k) total += b(k);
    CHECK(total == doctest::Approx(static_cast<double>(d.full_factorial_size()) / d.runs() - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("two-level regular fractions give word counts") {
  // 2^(4-1) with x4 = x1 + x2 + x3 mod 2: one word of length 4.
  std::vector<std::vector<int>> rows;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) rows.push_back({a, b, c, (a + b + c) % 2});
  const auto beta = beta_pattern(validate(rows, {2, 2, 2, 2}));
  REQUIRE(beta.size() == 4);
  CHECK(std::abs(beta(1)) < 1e-12);
  CHECK(std::abs(beta(2)) < 1e-12);
  CHECK(std::abs(beta(3)) < 1e-12);
  CHECK(beta(4) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("full factorials have zero aberration") {
  for (const auto& levels : {std::vector<int>{3, 3}, std::vector<int>{2, 3, 4}, std::vector<int>{5}}) {
    const auto b = beta_pattern(refdesign::full_factorial(levels));
    for (std::size_t k = 1; k <= b.size(); ++k) CHECK(std::abs(b(k)) < 1e-12);
  }
  const auto c = indicator_coefficients(refdesign::full_factorial({3, 3}));
  CHECK(c.b0() == 1.0);
}

TEST_CASE("beta pattern is invariant under column reordering and mirror reflection") {
  const Design d = refdesign::d1();
  const auto ref = beta_pattern(d);
  const Design shuffled = column_subset(d, std::vector<std::size_t>{3, 1, 0, 2});
  check_close(beta_pattern(shuffled), ref, 1e-10);
  check_close(beta_pattern(mirror_image(d)), ref, 1e-10);
}

TEST_CASE("low orders vanish up to the strength, odd orders vanish under mirror symmetry") {
  const auto b = beta_pattern(refdesign::oa27_strength3());
  for (int k = 1; k <= 3; ++k) CHECK(std::abs(b(k)) < 1e-9);
  CHECK(b(4) > 1e-3);
  for (const auto& d : {refdesign::d1_prime(), refdesign::d2_prime()}) {
    const auto bp = beta_pattern(d);
    for (int k = 1; k <= 8; k += 2) CHECK(std::abs(bp(k)) < 1e-9);
  }
}

TEST_CASE("split beta and xi grids against brute force") {
  for (const auto& d : {refdesign::d1(), refdesign::d2_prime()}) {
    const std::size_t m = d.factors();
    const auto bs = beta_split(d);
    const auto xi = xi_grid(d);
    CHECK(bs.limit() == static_cast<int>(m));
    CHECK(xi.limit() == static_cast<int>(m) - 1);
    CHECK(bs(0, 0) == 1.0);

    oracle::Grid eb(m + 1, std::vector<double>(m + 1, 0.0)), ex = eb;
    for (const auto& t : oracle::tuples(m)) {
      const auto [i, j] = ones_twos(t);
      const double r = ratio_oracle(d, t);
      eb[i][j] += r * r;
      for (std::size_t l = 0; l < m; ++l) {
        if (t[l] != 0) continue;
        auto t2 = t;
        t2[l] = 2;
        ex[i][j] += r * ratio_oracle(d, t2);
      }
    }
    for (int i = 0; i <= static_cast<int>(m); ++i)
      for (int j = 0; i + j <= static_cast<int>(m); ++j) {
        CAPTURE(i);
        CAPTURE(j);
        CHECK(std::abs(bs(i, j) - eb[i][j]) < 1e-12);
        CHECK(std::abs(xi(i, j) - ex[i][j]) < 1e-12);
      }
  }
}

TEST_CASE("split grids vanish at low orders") {
  const auto xi = xi_grid(refdesign::d1());
  const auto bs = beta_split(refdesign::d1());
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; i + j <= 2; ++j) {
      if (i + j == 0) continue;
      CHECK(std::abs(xi(i, j)) < 1e-9);
      CHECK(std::abs(bs(i, j)) < 1e-9);
    }
  const auto ff = refdesign::full_factorial({3, 3});
  const auto fb = beta_split(ff);
  const auto fx = xi_grid(ff);
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; i + j <= 2; ++j) {
      if (i + j > 0) CHECK(std::abs(fb(i, j)) < 1e-12);
      if (i + j <= 1) CHECK(std::abs(fx(i, j)) < 1e-12);
    }
}

TEST_CASE("split grid support and level checks") {
  SplitGrid g(3);
  CHECK(g(4, 0) == 0.0);
  CHECK(g(-1, 1) == 0.0);
  CHECK_THROWS_AS(g.at(2, 2), std::out_of_range);
  CHECK_THROWS_AS(beta_split(refdesign::full_factorial({3, 2})), LevelCountError);
  CHECK_THROWS_AS(xi_grid(refdesign::full_factorial({4, 3})), LevelCountError);
  const BetaPattern b({0.5, 0.25});
  CHECK(b(0) == 0.0);
  CHECK(b(3) == 0.0);
  CHECK(b(2) == 0.25);
}
