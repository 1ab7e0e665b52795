#include <doctest.h>

#include "qscreen/builtin.hpp"
#include "qscreen/design.hpp"
#include "reference_designs.hpp"

using namespace qscreen;

TEST_CASE("validate rejects malformed level matrices") {
  CHECK_THROWS_AS(validate({}, {3, 3}), DesignError);
  CHECK_THROWS_AS(validate({{0, 1}}, {}), DesignError);
  CHECK_THROWS_AS(validate({{0, 3}}, {3, 3}), DesignError);
  CHECK_THROWS_AS(validate({{0, -1}}, {3, 3}), DesignError);
  CHECK_THROWS_AS(validate({{0, 1, 2}}, {3, 3}), DesignError);
  CHECK_THROWS_AS(validate({{0}}, {1}), DesignError);
  CHECK_THROWS_AS(validate(std::vector<int>{0, 1, 2}, 2, {3, 3}), DesignError);
}

TEST_CASE("accessors follow runs-as-rows layout") {
  const Design d = validate({{0, 1}, {2, 0}, {1, 1}}, {3, 2});
  CHECK(d.runs() == 3);
  CHECK(d.factors() == 2);
  CHECK(d.at(1, 0) == 2);
  CHECK(d.column(1) == std::vector<int>{1, 0, 1});
  CHECK(d.full_factorial_size() == 6);
  CHECK(d.max_degree() == 3);
  CHECK_FALSE(d.all_levels(3));
}

TEST_CASE("strength by exhaustive projection") {
  CHECK(strength(refdesign::d1()) == 2);
  CHECK(strength(refdesign::d2()) == 2);
  CHECK(strength(builtin_design("L18").design) == 2);
  CHECK(strength(refdesign::full_factorial({3, 3})) == 2);
  CHECK(strength(refdesign::full_factorial({2, 3, 4})) == 3);
  CHECK(strength(refdesign::oa27_strength3()) == 3);

  // A half replicate of 3^2 is not even balanced in one column.
  CHECK(strength(validate({{0, 0}, {1, 1}, {2, 2}, {0, 1}}, {3, 3})) == 0);
  // Latin square rows: strength 2 in 3 factors, 9 runs.
  CHECK(strength(validate({{0, 0, 0}, {0, 1, 1}, {0, 2, 2}, {1, 0, 1}, {1, 1, 2}, {1, 2, 0}, {2, 0, 2},
                           {2, 1, 0}, {2, 2, 1}},
                          {3, 3, 3})) == 2);
}

TEST_CASE("embedded arrays match their transcriptions") {
  CHECK(builtin_design("D1").design == refdesign::d1());
  CHECK(builtin_design("D2").design == refdesign::d2());
  const auto& l18 = builtin_design("L18");
  CHECK(l18.design.runs() == 18);
  CHECK(l18.design.factors() == 7);
  CHECK(l18.design.all_levels(3));
  CHECK_FALSE(l18.provenance.empty());
  CHECK(builtin_names() == std::vector<std::string>{"D1", "D2", "L18"});
  CHECK_THROWS_AS(builtin_design("L27"), std::invalid_argument);
}

TEST_CASE("level permutation images") {
  CHECK(LevelPermutation::parse_image("201") == std::vector<int>{2, 0, 1});
  CHECK(LevelPermutation::parse_image("0,2,1") == std::vector<int>{0, 2, 1});
  CHECK(LevelPermutation::format_image(std::vector<int>{1, 2, 0}) == "120");
  CHECK_THROWS_AS(LevelPermutation::parse_image("200"), DesignError);
  CHECK_THROWS_AS(LevelPermutation::parse_image("2a1"), DesignError);
  CHECK_THROWS_AS(LevelPermutation::parse_image(""), DesignError);

  auto p = LevelPermutation::identity(std::vector<int>{3, 2});
  CHECK_THROWS_AS(p.set(0, {0, 1}), DesignError);
  CHECK_THROWS_AS(p.set(2, {0, 1}), DesignError);
  CHECK_THROWS_AS(p.set(1, {1, 1}), DesignError);
  p.set(0, {2, 0, 1});
  CHECK(p(0, 0) == 2);
  CHECK(p(0, 2) == 1);
  CHECK(p(1, 1) == 1);
}

TEST_CASE("apply_permutation relabels one column only") {
  const Design d = refdesign::d1();
  const Design p = refdesign::d1_prime();
  for (std::size_t i = 0; i < d.runs(); ++i) {
    CHECK(p.at(i, 0) == d.at(i, 0));
    CHECK(p.at(i, 1) == std::vector<int>{2, 0, 1}[d.at(i, 1)]);
    CHECK(p.at(i, 3) == d.at(i, 3));
  }
  CHECK(strength(p) == strength(d));
}

TEST_CASE("mirror image and mirror symmetry") {
  const Design d = validate({{0, 1}, {2, 2}}, {3, 4});
  const Design m = mirror_image(d);
  CHECK(m.at(0, 0) == 2);
  CHECK(m.at(0, 1) == 2);
  CHECK(m.at(1, 1) == 1);
  CHECK(mirror_image(m) == d);

  CHECK_FALSE(is_mirror_symmetric(refdesign::d1()));
  CHECK_FALSE(is_mirror_symmetric(refdesign::d2()));
  CHECK(is_mirror_symmetric(refdesign::d1_prime()));
  CHECK(is_mirror_symmetric(refdesign::d2_prime()));
  CHECK(is_mirror_symmetric(refdesign::full_factorial({3, 3, 3})));
}

TEST_CASE("same_runs compares multisets of runs") {
  const Design a = validate({{0, 1}, {1, 0}, {1, 0}}, {2, 2});
  const Design b = validate({{1, 0}, {0, 1}, {1, 0}}, {2, 2});
  const Design c = validate({{1, 0}, {0, 1}, {0, 1}}, {2, 2});
  CHECK(same_runs(a, b));
  CHECK_FALSE(same_runs(a, c));
  CHECK_FALSE(a == b);
}

TEST_CASE("column_subset") {
  const Design& l18 = builtin_design("L18").design;
  const std::vector<std::size_t> cols{4, 0};
  const Design s = column_subset(l18, cols);
  CHECK(s.factors() == 2);
  for (std::size_t i = 0; i < l18.runs(); ++i) {
    CHECK(s.at(i, 0) == l18.at(i, 4));
    CHECK(s.at(i, 1) == l18.at(i, 0));
  }
  CHECK_THROWS_AS(column_subset(l18, std::vector<std::size_t>{0, 0}), DesignError);
  CHECK_THROWS_AS(column_subset(l18, std::vector<std::size_t>{7}), DesignError);
  CHECK_THROWS_AS(column_subset(l18, std::vector<std::size_t>{}), DesignError);
}

TEST_CASE("exponent tuple norms") {
  const ExponentTuple t{{0, 2, 1, 0, 2}};
  CHECK(t.norm0() == 3);
  CHECK(t.norm1() == 5);
}
