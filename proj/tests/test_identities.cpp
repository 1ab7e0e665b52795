#include <doctest.h>

#include <cmath>
#include <limits>

#include "qscreen/builtin.hpp"
#include "qscreen/identities.hpp"
#include "reference_designs.hpp"

using namespace qscreen;

namespace {

bool has_check(const VerifyResult& r, const std::string& name) {
  for (const auto& rep : r.reports)
    if (rep.name == name) return true;
  return false;
}

std::string failures(const VerifyResult& r) {
  std::string s;
  for (const auto& rep : r.reports)
    if (!rep.passed) s += rep.name + " " + rep.params + " " + rep.note + "; ";
  return s;
}

Design l18_cols(std::vector<std::size_t> cols) { return column_subset(builtin_design("L18").design, cols); }

}  // namespace

TEST_CASE("every check passes on the reference arrays and their permuted versions") {
  for (const auto& d : {refdesign::d1(), refdesign::d2(), refdesign::d1_prime(), refdesign::d2_prime()}) {
    const auto r = verify_design(d);
    CAPTURE(failures(r));
    CHECK(r.all_passed());
    CHECK(has_check(r, "split_contamination"));
    CHECK(has_check(r, "contamination_relation"));
    CHECK(has_check(r, "beta_decomposition"));
    CHECK(has_check(r, "lambda_decomposition"));
    CHECK(has_check(r, "low_order_beta_split"));
    CHECK(has_check(r, "low_order_xi"));
    CHECK(has_check(r, "low_order_truncation"));
    CHECK(has_check(r, "mean_contamination"));
    CHECK_FALSE(has_check(r, "linear_relation"));
    REQUIRE(r.skipped.size() == 1);
  }
  CHECK(has_check(verify_design(refdesign::d1_prime()), "mirror_beta_split"));
  CHECK_FALSE(has_check(verify_design(refdesign::d1()), "mirror_beta_split"));
}

TEST_CASE("four-factor special cases of the split contamination identity") {
  const auto q = DesignQuantities::compute(refdesign::d1());
  const auto& b = q.beta_split;
  const auto& x = q.xi;
  const auto& l = q.lambda_split;
  const double r2 = std::sqrt(2.0);
  CHECK(std::abs(l(2, 2) - (1.5 * b(3, 1) + 1.5 * b(1, 3) + b(1, 2) + r2 * x(1, 2))) < 1e-9);
  CHECK(std::abs(l(0, 3) - (b(1, 3) + 0.5 * b(1, 2))) < 1e-9);
  CHECK(std::abs(l(4, 0) - (0.5 * b(3, 1) + b(3, 0) + r2 * x(3, 0))) < 1e-9);
  // p + q = m + 1 lies outside the support and must vanish
  for (int p = 0; p <= 5; ++p) {
    const auto rep = check_split_contamination(q, p, 5 - p);
    CHECK(rep.passed);
    CHECK(rep.lhs == 0.0);
  }
  CHECK(l(2, 2) > 0.0);
}

TEST_CASE("split contamination identity rejects invalid (p, q)") {
  const auto q = DesignQuantities::compute(refdesign::d2());
  CHECK_THROWS_AS(check_split_contamination(q, 1, 0), PreconditionError);
  CHECK_THROWS_AS(check_split_contamination(q, -1, 2), PreconditionError);
  CHECK(check_split_contamination(q, 0, 1).passed);
}

TEST_CASE("linear relation for m = strength + 1") {
  // three columns of the 18-run array: strength 2, m = 3
  const Design d = refdesign::permuted(l18_cols({0, 1, 4}), 0, {2, 0, 1});
  const auto q = DesignQuantities::compute(d);
  REQUIRE(q.strength == 2);
  for (int k = 2; k <= q.max_degree; ++k) {
    const auto rep = check_linear_relation(q, k);
    CAPTURE(k);
    CHECK(rep.residual < 1e-9);
  }
  const auto r = verify_design(d);
  CHECK(has_check(r, "linear_relation"));
  CHECK(r.skipped.empty());
  CHECK(r.all_passed());

  CHECK_THROWS_AS(check_linear_relation(DesignQuantities::compute(refdesign::d1()), 2), PreconditionError);
}

TEST_CASE("rho of the linear relation") {
  CHECK(linear_relation_rho(2, 2, 6) == 3.0);
  CHECK(linear_relation_rho(3, 2, 6) == 2.5);
  CHECK(linear_relation_rho(5, 2, 6) == 1.5);
  CHECK(linear_relation_rho(6, 2, 6) == 0.0);
  CHECK(linear_relation_rho(3, 3, 8) == 4.0);
}

TEST_CASE("strength-3 array: truncation and linear relation") {
  const auto q = DesignQuantities::compute(refdesign::oa27_strength3());
  REQUIRE(q.strength == 3);
  CHECK(std::abs(q.lambda(2)) < 1e-9);
  CHECK(std::abs(q.lambda(3) - 4.0 * q.beta(4)) < 1e-9);
  for (const auto& rep : check_low_order_truncation(q)) CHECK(rep.passed);
  const auto r = verify_design(refdesign::oa27_strength3());
  CAPTURE(failures(r));
  CHECK(r.all_passed());
  CHECK(has_check(r, "linear_relation"));
}

TEST_CASE("mirror symmetry and even-order contamination") {
  const auto sym = check_mirror_even_contamination(DesignQuantities::compute(refdesign::d1_prime()));
  REQUIRE(sym.size() == 2);
  CHECK(sym[0].passed);
  CHECK(sym[0].note.empty());
  CHECK(sym[1].passed);
  CHECK(sym[1].note.empty());

  const auto asym = check_mirror_even_contamination(DesignQuantities::compute(refdesign::d1()));
  CHECK(asym[0].passed);
  CHECK(asym[0].note == "vacuous");
  CHECK(asym[1].passed);

  // A counterexample to the converse is flagged loudly.
  DesignQuantities fake = DesignQuantities::compute(refdesign::d1_prime());
  fake.mirror_symmetric = false;
  const auto flagged = check_mirror_even_contamination(fake);
  CHECK_FALSE(flagged[1].passed);
  CHECK(flagged[1].residual == std::numeric_limits<double>::infinity());
  CHECK(flagged[1].note.find("COUNTEREXAMPLE") != std::string::npos);
}

TEST_CASE("a corrupted array fails verification through its preconditions") {
  const Design d = refdesign::d1();
  std::vector<int> cells;
  for (std::size_t i = 0; i < d.runs(); ++i)
    for (std::size_t j = 0; j < d.factors(); ++j) cells.push_back(d.at(i, j));
  cells[0] = (cells[0] + 1) % 3;
  const Design bad = validate(cells, d.runs(), {3, 3, 3, 3});
  REQUIRE(strength(bad) < 2);
  const auto r = verify_design(bad);
  CHECK_FALSE(r.all_passed());
  bool precondition = false;
  for (const auto& rep : r.reports) precondition = precondition || (rep.params == "precondition" && !rep.passed);
  CHECK(precondition);
}

TEST_CASE("non-three-level designs are rejected") {
  const auto r = verify_design(refdesign::full_factorial({2, 2, 2}));
  REQUIRE(r.reports.size() == 1);
  CHECK(r.reports[0].name == "design");
  CHECK_FALSE(r.all_passed());
  CHECK_THROWS_AS(DesignQuantities::compute(refdesign::full_factorial({2, 2, 2})), LevelCountError);
}
