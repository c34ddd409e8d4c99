// Deferred acceptance: pinned outcomes, proposal-order independence, trace
// capture, and the dependence of its guarantees on substitutable choices.

#include <algorithm>
#include <memory>
#include <random>
#include <vector>

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "gen.hpp"
#include "mechanism.hpp"

using namespace csm;

TEST_CASE("tie table: the mechanism seats 2 and 3 at the first school") {
  Scenario sc = tie_dominated_scenario();
  SpdaResult res = phi_bar(sc.inst, sc.prefs, sc.rules);

  Matching expect = Matching::from_assignment(sc.inst, {kUnmatched, 0, 0, 1});
  CHECK(res.matching == expect);
  CHECK(res.trace.total_rounds >= 4);  // at least one proposal per student
  CHECK_FALSE(res.trace.captured);
  CHECK(res.trace.rounds.empty());
}

TEST_CASE("trace capture records every round consistently") {
  Scenario sc = tie_dominated_scenario();
  SpdaOptions opt;
  opt.capture_trace = true;
  SpdaResult res = phi_bar(sc.inst, sc.prefs, sc.rules, opt);

  CHECK(res.trace.captured);
  CHECK(static_cast<int>(res.trace.rounds.size()) == res.trace.total_rounds);
  REQUIRE_FALSE(res.trace.rounds.empty());
  for (std::size_t k = 0; k < res.trace.rounds.size(); ++k) {
    const SpdaRound& r = res.trace.rounds[k];
    CHECK(r.round == static_cast<int>(k) + 1);
    CHECK(set_contains(r.pool, r.proposer));
    // held plus rejected partitions the pool.
    StudentSet merged = r.held;
    for (StudentId i : r.rejected) merged = set_with(merged, i);
    CHECK(merged == r.pool);
  }

  // The matching is identical with and without tracing.
  SpdaResult plain = phi_bar(sc.inst, sc.prefs, sc.rules);
  CHECK(plain.matching == res.matching);
}

TEST_CASE("the outcome does not depend on who proposes first") {
  Scenario sc = tie_dominated_scenario();
  SpdaResult base = phi_bar(sc.inst, sc.prefs, sc.rules);

  std::vector<StudentId> order = {0, 1, 2, 3};
  do {
    SpdaOptions opt;
    opt.proposer_priority = order;
    SpdaResult res = phi_bar(sc.inst, sc.prefs, sc.rules, opt);
    CAPTURE(order[0]);
    CAPTURE(order[1]);
    CHECK(res.matching == base.matching);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST_CASE("proposal order independence on random instances") {
  std::mt19937_64 rng(99001);
  GenOptions opt;
  opt.max_students = 6;
  opt.max_schools = 3;
  opt.allow_sqrt = true;
  for (int trial = 0; trial < 15; ++trial) {
    GeneratedInstance gi = random_scoring_instance(rng, opt);
    SpdaResult base = phi_bar(gi.inst, gi.prefs, gi.rules);

    std::vector<StudentId> order(gi.inst.n_students());
    std::iota(order.begin(), order.end(), 0);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(order.begin(), order.end(), rng);
      SpdaOptions sopt;
      sopt.proposer_priority = order;
      CAPTURE(trial);
      CHECK(phi_bar(gi.inst, gi.prefs, gi.rules, sopt).matching == base.matching);
    }
  }
}

TEST_CASE("students never sit at schools they find unacceptable") {
  std::mt19937_64 rng(5150);
  GenOptions opt;
  opt.max_students = 7;
  opt.accept_prob = 0.5;  // plenty of short lists
  for (int trial = 0; trial < 20; ++trial) {
    GeneratedInstance gi = random_scoring_instance(rng, opt);
    SpdaResult res = phi_bar(gi.inst, gi.prefs, gi.rules);
    for (StudentId i = 0; i < gi.inst.n_students(); ++i) {
      SchoolId s = res.matching.assignment[i];
      if (s != kUnmatched) CHECK(gi.prefs.acceptable(i, s));
    }
    CHECK(validate_matching(gi.inst, res.matching) == std::nullopt);
  }
}

TEST_CASE("deferred acceptance over explicit choices: truth-telling baseline") {
  BrokenChoiceScenario sc = sp_broken_scenario();
  std::vector<const ChoiceFunction*> choices;
  for (const auto& c : sc.choices) choices.push_back(c.get());

  SpdaResult res = spda(sc.inst, sc.prefs, choices);
  // School 0 ends with {1,2}, school 1 with {3}; student 0 stays unmatched.
  Matching expect = Matching::from_assignment(sc.inst, {kUnmatched, 0, 0, 1});
  CHECK(res.matching == expect);

  // A misreport by student 0 (listing school 1 first) changes its seat; the
  // non-substitutable first school makes the mechanism manipulable here.
  PreferenceProfile lied = sc.prefs;
  lied.ranking[0] = {1, 0};
  SpdaResult after = spda(sc.inst, lied, choices);
  CHECK(after.matching.assignment[0] == 0);
  CHECK(sc.prefs.prefers(0, after.matching.assignment[0], res.matching.assignment[0]));
}

TEST_CASE("input validation") {
  Scenario sc = tie_dominated_scenario();

  SUBCASE("preference profile must cover every student") {
    PreferenceProfile bad = sc.prefs;
    bad.ranking.pop_back();
    CHECK_THROWS_AS(phi_bar(sc.inst, bad, sc.rules), PreconditionError);
  }

  SUBCASE("one rule per school") {
    auto rules = sc.rules;
    rules.pop_back();
    CHECK_THROWS_AS(phi_bar(sc.inst, sc.prefs, rules), PreconditionError);
  }

  SUBCASE("proposer priority must be a permutation") {
    SpdaOptions opt;
    opt.proposer_priority = {0, 0, 1, 2};
    CHECK_THROWS_AS(phi_bar(sc.inst, sc.prefs, sc.rules, opt), PreconditionError);
  }
}
