#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qscreen/builtin.hpp"
#include "qscreen/contamination.hpp"
#include "reference_designs.hpp"

using namespace qscreen;

namespace {

void check_printed(const ContaminationPattern& p, const std::vector<double>& printed) {
  REQUIRE(p.size() == printed.size());
  for (std::size_t i = 0; i < printed.size(); ++i) {
    CAPTURE(i + 2);
    CHECK(oracle::matches_printed(p(static_cast<int>(i + 2)), printed[i]));
  }
}

void check_against(const ContaminationPattern& p, const std::vector<double>& ref, double tol) {
  REQUIRE(p.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    CAPTURE(i + 2);
    CHECK(std::abs(p(static_cast<int>(i + 2)) - ref[i]) < tol);
  }
}

Matrix to_matrix(const oracle::Grid& g) {
  Matrix m(g.size(), g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) m(i, j) = g[i][j];
  return m;
}

oracle::Grid block_compound_symmetry(std::size_t blocks, std::size_t size, double rho) {
  const std::size_t n = blocks * size;
  oracle::Grid s(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i / size == j / size) s[i][j] = i == j ? 1.0 : rho;
  return s;
}

// A nonsingular but non-orthogonal 3-factor design.
Design lopsided() {
  return validate({{0, 0, 0}, {1, 2, 0}, {2, 1, 1}, {0, 1, 2}, {1, 0, 1}, {2, 2, 2}, {0, 2, 1}, {1, 1, 1}, {2, 0, 0},
                   {2, 2, 1}, {0, 0, 1}},
                  {3, 3, 3});
}

}  // namespace

TEST_CASE("contamination patterns of the two 18-run arrays match the tabulated values") {
  check_printed(contamination_pattern(refdesign::d1()), {0.844, 2.203, 4.078, 2.109, 3.797, 0.688, 0.281});
  check_printed(contamination_pattern(refdesign::d2()), {0.844, 2.203, 3.984, 3.141, 2.953, 0.781, 0.094});
}

TEST_CASE("level-permuted arrays become mirror-symmetric with the tabulated contamination") {
  check_printed(contamination_pattern(refdesign::d1_prime()), {0, 6, 0, 4.5, 0, 3.5, 0});
  check_printed(contamination_pattern(refdesign::d2_prime()), {0, 5.063, 0, 7.313, 0, 1.625, 0});
}

TEST_CASE("OLS contamination agrees with the explicit-inverse evaluator") {
  const auto& l18 = builtin_design("L18").design;
  for (const auto& d : {refdesign::d1(), refdesign::d2(), lopsided(), column_subset(l18, std::vector<std::size_t>{1, 3, 4, 6})}) {
    check_against(contamination_pattern(d), oracle::lambda(d), 1e-10);
  }
}

TEST_CASE("for strength-2 designs the alias matrix is n^-1 Z1' Zk") {
  const Design d = refdesign::d1();
  const std::size_t m = d.factors();
  for (int k = 2; k <= 3; ++k) {
    const auto a = alias_matrix(d, ContrastSelection::by_degree(k));
    REQUIRE(a.values.rows() == m);
    REQUIRE(a.values.cols() == a.tuples.size());
    double total = 0.0;
    for (std::size_t c = 0; c < a.tuples.size(); ++c) {
      const auto zk = oracle::column(d, a.tuples[c].entries);
      for (std::size_t l = 0; l < m; ++l) {
        const double expect = oracle::dot(oracle::column(d, oracle::linear_tuple(m, l)), zk) / 18.0;
        CHECK(std::abs(a.values(l, c) - expect) < 1e-12);
        total += expect * expect;
      }
    }
    CHECK(std::abs(a.contamination() - total) < 1e-12);
    CHECK(std::abs(a.contamination() - contamination_pattern(d)(k)) < 1e-12);
  }
}

TEST_CASE("split contamination sums back to the per-order pattern") {
  for (const auto& d : {refdesign::d1(), refdesign::d2(), lopsided()}) {
    const auto lam = contamination_pattern(d);
    const auto split = lambda_split(d);
    for (int k = 2; k <= lam.last_order(); ++k) {
      double s = 0.0;
      for (int j = 0; 2 * j <= k; ++j) s += split(k - 2 * j, j);
      CHECK(std::abs(s - lam(k)) < 1e-12);
    }
    for (int i = 0; i <= 3; ++i)
      for (int j = 0; i + j <= 4; ++j) {
        if (i + 2 * j < 2) continue;
        const auto a = alias_matrix(d, ContrastSelection::by_split(i, j));
        CHECK(std::abs(a.contamination() - split(i, j)) < 1e-12);
      }
  }
}

TEST_CASE("general-mean contamination equals the beta pattern") {
  const auto& l18 = builtin_design("L18").design;
  for (const auto& d : {refdesign::d1(), refdesign::d2(), refdesign::d1_prime(), lopsided(), l18,
                        refdesign::full_factorial({2, 3, 4})}) {
    const auto mean = mean_contamination(d);
    const auto beta = beta_pattern(d);
    CHECK(mean.first_order() == 1);
    REQUIRE(mean.size() == beta.size());
    for (int k = 1; k <= mean.last_order(); ++k) CHECK(std::abs(mean(k) - beta(k)) <= 1e-12);
  }
}

TEST_CASE("GLS with a scaled identity reduces to OLS") {
  const Design d = refdesign::d1();
  const auto ols = contamination_pattern(d);
  for (double scale : {1.0, 4.0}) {
    const Covariance sigma(scale * Matrix::identity(18));
    const auto gls = gls_contamination(d, sigma);
    CHECK(gls.model() == ContaminationModel::gls);
    REQUIRE(gls.size() == ols.size());
    for (int k = 2; k <= 8; ++k) CHECK(std::abs(gls(k) - ols(k)) <= 1e-12);
  }
}

TEST_CASE("GLS with block covariance matches the explicit-inverse evaluator") {
  const auto s = block_compound_symmetry(2, 9, 0.5);
  const auto w = oracle::inverse(s);
  for (const auto& d : {refdesign::d1(), refdesign::d2()}) {
    const auto gls = gls_contamination(d, Covariance(to_matrix(s)));
    check_against(gls, oracle::lambda(d, w), 1e-9);
  }

  oracle::Grid ar(18, std::vector<double>(18));
  for (std::size_t i = 0; i < 18; ++i)
    for (std::size_t j = 0; j < 18; ++j) ar[i][j] = std::pow(0.6, std::abs(static_cast<double>(i) - j));
  check_against(gls_contamination(refdesign::d2_prime(), Covariance(to_matrix(ar))),
                oracle::lambda(refdesign::d2_prime(), oracle::inverse(ar)), 1e-9);
}

TEST_CASE("covariance validation") {
  CHECK_THROWS_AS(Covariance(to_matrix({{1, 2}, {2, 1}})), NotPositiveDefiniteError);
  const Covariance small(Matrix::identity(4));
  CHECK_THROWS_AS(gls_contamination(refdesign::d1(), small), std::invalid_argument);
}

TEST_CASE("collinear linear contrasts are reported") {
  // factor 3 repeats factor 1
  const Design base = refdesign::d1();
  const Design d = column_subset(base, std::vector<std::size_t>{0, 1, 2});
  std::vector<int> cells;
  for (std::size_t i = 0; i < base.runs(); ++i) {
    cells.push_back(base.at(i, 0));
    cells.push_back(base.at(i, 1));
    cells.push_back(base.at(i, 0));
  }
  const Design dup = validate(cells, base.runs(), {3, 3, 3});
  CHECK_NOTHROW(contamination_pattern(d));
  try {
    contamination_pattern(dup);
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(std::string(e.what()).find("X") != std::string::npos);
    CHECK(e.dependent().size() == 1);
  }
  CHECK_THROWS_AS(alias_matrix(dup, ContrastSelection::by_degree(2)), SingularMatrixError);
  CHECK_THROWS_AS(gls_contamination(dup, Covariance(Matrix::identity(18))), SingularMatrixError);
}

TEST_CASE("pattern accessors") {
  const ContaminationPattern p(ContaminationModel::linear_ols, 2, {0.5, 0.25});
  CHECK(p.last_order() == 3);
  CHECK(p(1) == 0.0);
  CHECK(p(2) == 0.5);
  CHECK(p(4) == 0.0);
  CHECK(name(ContaminationModel::general_mean) == "mean");

  const auto both = evaluate_patterns(refdesign::d2());
  const auto lam = contamination_pattern(refdesign::d2());
  const auto beta = beta_pattern(refdesign::d2());
  for (int k = 1; k <= 8; ++k) {
    CHECK(both.beta(k) == beta(k));
    CHECK(both.lambda(k) == lam(k));
  }
}
