// Core data model: student sets, subset enumeration, preference semantics,
// matching construction and validation, Pareto comparison.

#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "model.hpp"

using namespace csm;

namespace {

Instance two_school_instance() {
  Instance inst;
  inst.student_ids = {"a", "b", "c"};
  inst.school_ids = {"s", "t"};
  inst.capacity = {2, 1};
  inst.type_of = {{1, 1, 2}, {1, 1, 1}};
  inst.type_labels = {{"@none", "A", "B"}, {"@none", "A"}};
  return inst;
}

}  // namespace

TEST_CASE("set helpers keep sets sorted and duplicate-free") {
  StudentSet s = {1, 3, 5};
  CHECK(set_contains(s, 3));
  CHECK_FALSE(set_contains(s, 2));
  CHECK(set_with(s, 2) == StudentSet{1, 2, 3, 5});
  CHECK(set_with(s, 3) == s);  // already present
  CHECK(set_without(s, 3) == StudentSet{1, 5});
  CHECK(set_without(s, 4) == s);  // absent
  CHECK(sorted_set({5, 1, 3, 1}) == StudentSet{1, 3, 5});
  CHECK(set_to_string({0, 2}) == "{0,2}");
  CHECK(set_to_string({}) == "{}");
}

TEST_CASE("subsets_up_to enumerates by size then lexicographically") {
  auto subs = subsets_up_to(3, 2);
  std::vector<StudentSet> expect = {{}, {0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
  CHECK(subs == expect);
  CHECK(subsets_up_to(4, 4).size() == 16);
  CHECK(subsets_up_to(4, 0).size() == 1);
}

TEST_CASE("preference ranks: listed, unmatched, unlisted") {
  PreferenceProfile prefs;
  prefs.ranking = {{1, 0}, {}, {0}};

  // Student 0 lists school 1 then school 0.
  CHECK(prefs.rank_of(0, 1) == 0);
  CHECK(prefs.rank_of(0, 0) == 1);
  CHECK(prefs.rank_of(0, kUnmatched) == 2);
  CHECK(prefs.prefers(0, 1, 0));
  CHECK(prefs.prefers(0, 0, kUnmatched));
  CHECK_FALSE(prefs.prefers(0, kUnmatched, 0));
  CHECK(prefs.acceptable(0, 0));
  CHECK(prefs.acceptable(0, 1));

  // Student 1 lists nothing: every school is worse than staying unmatched.
  CHECK(prefs.rank_of(1, kUnmatched) == 0);
  CHECK(prefs.rank_of(1, 0) == 1);
  CHECK(prefs.prefers(1, kUnmatched, 0));
  CHECK_FALSE(prefs.acceptable(1, 0));

  // Student 2 lists only school 0; school 1 is unlisted.
  CHECK(prefs.acceptable(2, 0));
  CHECK_FALSE(prefs.acceptable(2, 1));
  CHECK(prefs.prefers(2, kUnmatched, 1));
  CHECK_FALSE(prefs.prefers(2, 1, 1));  // strict: never prefers to itself
}

TEST_CASE("from_assignment builds consistent rosters") {
  Instance inst = two_school_instance();
  Matching m = Matching::from_assignment(inst, {0, kUnmatched, 0});
  CHECK(m.roster[0] == StudentSet{0, 2});
  CHECK(m.roster[1] == StudentSet{});
  CHECK(validate_matching(inst, m) == std::nullopt);
}

TEST_CASE("validate_matching rejects structural violations") {
  Instance inst = two_school_instance();

  SUBCASE("capacity overflow") {
    Matching m = Matching::from_assignment(inst, {1, kUnmatched, kUnmatched});
    m.assignment[1] = 1;
    m.roster[1] = {0, 1};
    auto err = validate_matching(inst, m);
    REQUIRE(err.has_value());
    CHECK(err->find("capacity") != std::string::npos);
  }

  SUBCASE("assignment out of range") {
    Matching m = Matching::from_assignment(inst, {0, kUnmatched, kUnmatched});
    m.assignment[0] = 5;
    CHECK(validate_matching(inst, m).has_value());
  }

  SUBCASE("roster disagrees with assignment") {
    Matching m = Matching::from_assignment(inst, {0, kUnmatched, kUnmatched});
    m.roster[1] = {1};
    CHECK(validate_matching(inst, m).has_value());
  }

  SUBCASE("wrong assignment length") {
    Matching m = Matching::from_assignment(inst, {0, kUnmatched, kUnmatched});
    m.assignment.pop_back();
    CHECK(validate_matching(inst, m).has_value());
  }
}

TEST_CASE("from_assignment rejects out-of-range schools") {
  Instance inst = two_school_instance();
  CHECK_THROWS_AS(Matching::from_assignment(inst, {7, kUnmatched, kUnmatched}),
                  PreconditionError);
  CHECK_THROWS_AS(Matching::from_assignment(inst, {0}), PreconditionError);
}

TEST_CASE("pareto_dominates requires weak improvement for all, strict for one") {
  Instance inst = two_school_instance();
  PreferenceProfile prefs;
  prefs.ranking = {{0, 1}, {0, 1}, {1, 0}};

  Matching base = Matching::from_assignment(inst, {1, 0, 0});
  Matching better = Matching::from_assignment(inst, {0, 0, 1});   // 0 and 2 both move up
  Matching mixed = Matching::from_assignment(inst, {0, 1, 0});    // 0 up, 1 down

  CHECK(pareto_dominates(prefs, better, base));
  CHECK_FALSE(pareto_dominates(prefs, base, better));
  CHECK_FALSE(pareto_dominates(prefs, mixed, base));
  CHECK_FALSE(pareto_dominates(prefs, base, base));  // no strict improvement
}
