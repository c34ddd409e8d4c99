// Brute-force oracles: stability under both definitions, exhaustive
// enumeration, strategy-proofness audits, bound-respecting reference choices,
// soft-bounds fairness, the subset-valuation oracle, and the slot-priority
// search.

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "gen.hpp"
#include "mechanism.hpp"
#include "verify.hpp"

using namespace csm;

TEST_CASE("cyclic table: no matching is stable") {
  Scenario sc = no_stable_scenario();
  auto stable = enumerate_stable(sc.inst, sc.prefs, sc.rules);
  CHECK(stable.empty());
  // Each of the three students is seated or not, except all three at once
  // (the school only has two seats): 2^3 - 1 matchings.
  CHECK(enumerate_all_matchings(sc.inst).size() == 7);
}

TEST_CASE("tie table: the mechanism's outcome is stable but Pareto-dominated") {
  Scenario sc = tie_dominated_scenario();
  Matching outcome = phi_bar(sc.inst, sc.prefs, sc.rules).matching;

  StabilityVerdict v = stability_verdict(sc.inst, sc.prefs, sc.rules, outcome);
  CHECK(v.stable());

  // The matching that sends 3 and 4 to the first school and 2 to the second
  // is stable as well and every student weakly gains, two strictly.
  Matching better = Matching::from_assignment(sc.inst, {kUnmatched, 1, 0, 0});
  CHECK(stability_verdict(sc.inst, sc.prefs, sc.rules, better).stable());
  CHECK(pareto_dominates(sc.prefs, better, outcome));

  // Swapping instead student 1 into the first school is NOT stable: it
  // wastes nobody but lets 2 envy a seat it has priority for.
  Matching variant = Matching::from_assignment(sc.inst, {0, kUnmatched, 0, 1});
  StabilityVerdict vv = stability_verdict(sc.inst, sc.prefs, sc.rules, variant);
  CHECK_FALSE(vv.stable());
  CHECK_FALSE(vv.fair);
  REQUIRE_FALSE(vv.envy.empty());

  // Both stable matchings above appear in the exhaustive enumeration, and
  // the dominated mechanism outcome is not student-optimal.
  auto stable = enumerate_stable(sc.inst, sc.prefs, sc.rules);
  CHECK(std::count(stable.begin(), stable.end(), outcome) == 1);
  CHECK(std::count(stable.begin(), stable.end(), better) == 1);
  auto optimal = student_optimal_stable(sc.prefs, stable);
  CHECK(std::count(optimal.begin(), optimal.end(), better) == 1);
  CHECK(std::count(optimal.begin(), optimal.end(), outcome) == 0);
}

TEST_CASE("stability witnesses name the violation") {
  Scenario sc = tie_dominated_scenario();

  // Wasteful: student 2 would rather fill the first school's empty seat.
  Matching wasteful = Matching::from_assignment(sc.inst, {kUnmatched, 0, kUnmatched, 1});
  StabilityVerdict v = stability_verdict(sc.inst, sc.prefs, sc.rules, wasteful);
  CHECK_FALSE(v.non_wasteful);
  REQUIRE_FALSE(v.witnesses.empty());

  // Individually irrational: a student seated at an unlisted school.
  PreferenceProfile prefs = sc.prefs;
  prefs.ranking[0] = {1};  // student 0 no longer lists school 0
  Matching forced = Matching::from_assignment(sc.inst, {0, kUnmatched, 0, 1});
  StabilityVerdict vi = stability_verdict(sc.inst, prefs, sc.rules, forced);
  CHECK_FALSE(vi.individually_rational);
}

TEST_CASE("choice-based stability is strictly finer under ties") {
  ChoiceScenario sc = tie_counterexample();
  std::vector<const ChoiceFunction*> choices = {sc.choice.get()};

  // Seating student 0 alone: stable under the priority rule (0 and 1 are
  // tied, so neither envies), yet the explicit choice picks 1 from {0,1},
  // so 1 blocks.
  Matching zero = Matching::from_assignment(sc.inst, {0, kUnmatched});
  std::vector<std::shared_ptr<const PriorityRule>> rules = {sc.rule};
  CHECK(stability_verdict(sc.inst, sc.prefs, rules, zero).stable());
  CStabilityVerdict cv = c_stability_verdict(sc.inst, sc.prefs, choices, zero);
  CHECK_FALSE(cv.c_stable());
  CHECK_FALSE(cv.unblocked);

  // Seating student 1 alone satisfies both notions.
  Matching one = Matching::from_assignment(sc.inst, {kUnmatched, 0});
  CHECK(stability_verdict(sc.inst, sc.prefs, rules, one).stable());
  CHECK(c_stability_verdict(sc.inst, sc.prefs, choices, one).c_stable());
}

TEST_CASE("derived-choice stability implies priority stability, never the reverse") {
  // On the tie table the set of choice-stable matchings is a strict subset
  // of the stable ones; on strict-priority instances the two coincide.
  Scenario sc = tie_dominated_scenario();
  StabilityComparison cmp = compare_stability_notions(sc.inst, sc.prefs, sc.rules);
  CHECK(cmp.c_stable_not_stable.empty());
  CHECK(cmp.c_stable_count <= cmp.stable_count);
  CHECK(cmp.stable_count >= 2);

  std::mt19937_64 rng(31337);
  GenOptions opt;
  opt.max_students = 5;
  opt.max_schools = 3;
  for (int trial = 0; trial < 10; ++trial) {
    GeneratedInstance gi = random_scoring_instance(rng, opt);
    StabilityComparison c = compare_stability_notions(gi.inst, gi.prefs, gi.rules);
    CAPTURE(trial);
    CHECK(c.c_stable_not_stable.empty());
  }
}

TEST_CASE("strict priorities: the two stability notions coincide") {
  std::mt19937_64 rng(8088);
  GenOptions opt;
  opt.max_students = 5;
  opt.max_schools = 2;
  opt.force_linear = true;
  for (int trial = 0; trial < 10; ++trial) {
    GeneratedInstance gi = random_scoring_instance(rng, opt);
    StabilityComparison c = compare_stability_notions(gi.inst, gi.prefs, gi.rules);
    CAPTURE(trial);
    CHECK(c.c_stable_not_stable.empty());
    CHECK(c.stable_not_c_stable.empty());
    CHECK(c.stable_count == c.c_stable_count);
  }
}

TEST_CASE("the mechanism is strategy-proof on the tie table") {
  Scenario sc = tie_dominated_scenario();
  AuditReport audit = audit_strategy_proofness(sc.inst, sc.prefs, sc.rules, 2);
  CHECK(audit.passed);
  CHECK(audit.witnesses.empty());
  CHECK(audit.cases > 0);
}

TEST_CASE("the audit catches manipulation when substitutability is dropped") {
  BrokenChoiceScenario sc = sp_broken_scenario();
  std::vector<const ChoiceFunction*> choices;
  for (const auto& c : sc.choices) choices.push_back(c.get());

  AuditReport audit = audit_strategy_proofness_choice(sc.inst, sc.prefs, choices, 1);
  CHECK_FALSE(audit.passed);
  CHECK_FALSE(audit.witnesses.empty());
}

TEST_CASE("strategy-proofness holds on random scoring instances") {
  std::mt19937_64 rng(271828);
  GenOptions opt;
  opt.max_students = 4;
  opt.max_schools = 2;
  opt.allow_sqrt = true;
  for (int trial = 0; trial < 6; ++trial) {
    GeneratedInstance gi = random_scoring_instance(rng, opt);
    AuditReport audit = audit_strategy_proofness(gi.inst, gi.prefs, gi.rules, 2);
    CAPTURE(trial);
    CHECK(audit.passed);
  }
}

TEST_CASE("preference list enumeration covers every strict list") {
  CHECK(all_preference_lists(0).size() == 1);   // the empty list only
  CHECK(all_preference_lists(1).size() == 2);   // {} and {0}
  CHECK(all_preference_lists(2).size() == 5);   // {} {0} {1} {01} {10}
  CHECK(all_preference_lists(3).size() == 16);  // 1 + 3 + 6 + 6
  auto lists = all_preference_lists(2);
  CHECK(std::count(lists.begin(), lists.end(), std::vector<SchoolId>{1, 0}) == 1);
}

TEST_CASE("reserve choice: reserved seats first, merit for the rest") {
  // Two types, capacity 3, one seat reserved per type.
  std::vector<TypeId> type_of = {1, 1, 2, 2};
  std::vector<Rat> sigma = {Rat(9, 10), Rat(8, 10), Rat(3, 10), Rat(2, 10)};
  std::vector<int> reserve = {0, 1, 1};

  StudentSet chosen = reserves_choice({0, 1, 2, 3}, type_of, sigma, reserve, 3);
  // Reserved: 0 (best type 1) and 2 (best type 2); open seat: 1 over 3.
  CHECK(chosen == StudentSet{0, 1, 2});
  CHECK(reserves_clause_witness({0, 1, 2, 3}, chosen, type_of, sigma, reserve, 3) ==
        std::nullopt);
  // Swapping 1 for 3 violates the merit clause for the open seat.
  CHECK(reserves_clause_witness({0, 1, 2, 3}, {0, 2, 3}, type_of, sigma, reserve, 3)
            .has_value());

  // With nobody of type 2 present the reserve cannot bind.
  CHECK(reserves_choice({0, 1}, type_of, sigma, reserve, 3) == StudentSet{0, 1});
}

TEST_CASE("quota choice: merit order capped per type") {
  std::vector<TypeId> type_of = {1, 1, 1, 2};
  std::vector<Rat> sigma = {Rat(9, 10), Rat(8, 10), Rat(7, 10), Rat(1, 10)};
  std::vector<int> quota = {0, 2, 2};

  StudentSet chosen = quotas_choice({0, 1, 2, 3}, type_of, sigma, quota, 3);
  // 0 and 1 fill type 1's quota; 2 is skipped; 3 takes the last seat.
  CHECK(chosen == StudentSet{0, 1, 3});
  CHECK(quotas_clause_witness({0, 1, 2, 3}, chosen, type_of, sigma, quota, 3) == std::nullopt);
  CHECK(quotas_clause_witness({0, 1, 2, 3}, {0, 1, 2}, type_of, sigma, quota, 3).has_value());
}

TEST_CASE("reserve preset rules implement the reserve choice") {
  std::mt19937_64 rng(606);
  GenOptions opt;
  opt.min_students = 3;
  opt.max_students = 6;
  opt.min_schools = 1;
  opt.max_schools = 1;
  opt.max_capacity = 3;
  opt.preset = PresetKind::Reserves;
  for (int trial = 0; trial < 8; ++trial) {
    GeneratedInstance gi = random_scoring_instance(rng, opt);
    auto rule = std::dynamic_pointer_cast<const AdjustedScoringRule>(gi.rules[0]);
    REQUIRE(rule);
    PresetCheck check = check_reserves_school(rule, gi.schools[0].params.reserve);
    CAPTURE(trial);
    CHECK(check.passed);
    CHECK(check.witnesses.empty());
    CHECK(check.cases > 0);
  }
}

TEST_CASE("quota preset rules implement the quota choice") {
  std::mt19937_64 rng(707);
  GenOptions opt;
  opt.min_students = 3;
  opt.max_students = 6;
  opt.min_schools = 1;
  opt.max_schools = 1;
  opt.max_capacity = 3;
  opt.preset = PresetKind::Quotas;
  for (int trial = 0; trial < 8; ++trial) {
    GeneratedInstance gi = random_scoring_instance(rng, opt);
    auto rule = std::dynamic_pointer_cast<const AdjustedScoringRule>(gi.rules[0]);
    REQUIRE(rule);
    PresetCheck check = check_quotas_school(rule, gi.schools[0].params.reserve);
    CAPTURE(trial);
    CHECK(check.passed);
  }
}

TEST_CASE("soft-bounds fairness coincides with priority fairness") {
  std::mt19937_64 rng(808);
  GenOptions opt;
  opt.min_students = 3;
  opt.max_students = 5;
  opt.min_schools = 1;
  opt.max_schools = 2;
  opt.max_capacity = 3;
  opt.preset = PresetKind::SoftBounds;
  for (int trial = 0; trial < 6; ++trial) {
    GeneratedInstance gi = random_scoring_instance(rng, opt);
    std::vector<SoftBoundsParams> params;
    for (const GeneratedSchool& gs : gi.schools)
      params.push_back({gs.sigma, gs.params.reserve, gs.params.quota});
    PresetCheck check = check_soft_bounds_equivalence(gi.inst, gi.prefs, gi.rules, params);
    CAPTURE(trial);
    CHECK(check.passed);
    CHECK(check.cases > 0);
  }
}

TEST_CASE("subset valuation oracle maximizes score plus square-root pull") {
  // Three students, bonus on type 2, capacity 2.
  std::vector<double> score = {0.9, 0.8, 0.1};
  std::vector<TypeId> type_of = {1, 1, 2};

  // Without the bonus the top two scores win.
  CHECK(optimal_choice_oracle(score, type_of, 2, 0.0, {0, 1, 2}, 2) == StudentSet{0, 1});
  // A pull of 1.0 on type 2 makes {0,2} worth 0.9+0.1+1.0 = 2.0 > 1.7.
  CHECK(optimal_choice_oracle(score, type_of, 2, 1.0, {0, 1, 2}, 2) == StudentSet{0, 2});
  // Capacity bounds the subset even when everything helps.
  CHECK(optimal_choice_oracle(score, type_of, 2, 1.0, {1, 2}, 1).size() == 1);
}

TEST_CASE("slot-specific choices fill slots in order") {
  // Slot 1 prefers 0 > 1 > 2, slot 2 prefers 2 > 1 > 0.
  std::vector<std::vector<StudentId>> slots = {{0, 1, 2}, {2, 1, 0}};
  CHECK(slot_specific_choose(slots, {0, 1, 2}) == StudentSet{0, 2});
  CHECK(slot_specific_choose(slots, {1, 2}) == StudentSet{1, 2});
  CHECK(slot_specific_choose(slots, {1}) == StudentSet{1});
  CHECK(slot_specific_choose(slots, {}) == StudentSet{});
}

TEST_CASE("slot search succeeds on representable behavior") {
  // Behavior generated by actual slot orders must be found again.
  std::vector<SlotCase> cases = {
      {{0, 1, 2}, {0, 2}},
      {{1, 2}, {1, 2}},
  };
  SlotSearchReport report = slot_impossibility_search(cases, 3);
  CHECK(report.pairs == 36);  // (3!)^2 ordered pairs
  CHECK(report.full_matches > 0);
}

TEST_CASE("square-root pull at half strength has no slot-specific representation") {
  ValuationScenario sc = slot_defeating_scenario();

  // First confirm the six optima against the exhaustive valuation oracle.
  for (const ValuationCase& c : sc.cases) {
    CHECK(optimal_choice_oracle(sc.scores(), sc.type_of, sc.bonus_type, sc.coeff,
                                c.applicants, sc.capacity) == c.optimum);
  }

  std::vector<SlotCase> slot_cases;
  for (const ValuationCase& c : sc.cases) slot_cases.push_back({c.applicants, c.optimum});
  SlotSearchReport report =
      slot_impossibility_search(slot_cases, static_cast<int>(sc.type_of.size()));
  CHECK(report.pairs == 518400);  // (6!)^2
  CHECK(report.full_matches == 0);
  CHECK(report.max_cases_matched < static_cast<int>(slot_cases.size()));
  CHECK(report.first_three_achievable);
}

TEST_CASE("enumeration guards reject oversized instances") {
  GenOptions opt;
  opt.min_students = 9;
  opt.max_students = 9;
  std::mt19937_64 rng(1);
  GeneratedInstance gi = random_scoring_instance(rng, opt);
  CHECK_THROWS_AS(enumerate_all_matchings(gi.inst), PreconditionError);
}
