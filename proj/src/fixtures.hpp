#pragma once

// Hand-pinned desk-scale scenarios shared by the tests and the repro
// command: a school whose seat-dependent priorities admit no stable matching,
// a two-school market where a priority tie makes the round-by-round outcome
// stable yet Pareto-dominated, a square-root diversity bonus that tracks a
// subset-valuation objective, the two counterexamples separating the two
// stability notions, a deliberately non-substitutable choice table that
// breaks strategy-proofness, and a two-seat valuation scenario no pair of
// slot-specific priorities can reproduce.

#include <memory>
#include <string>
#include <vector>

#include "choice.hpp"
#include "model.hpp"
#include "priority.hpp"
#include "rational.hpp"

namespace csm {

// A complete market: students, schools, preferences, and one priority rule
// per school.
struct Scenario {
  Instance inst;
  PreferenceProfile prefs;
  std::vector<std::shared_ptr<const PriorityRule>> rules;
};

// Three students (two of one type), one school with two seats. Each stored
// priority order flips against the seated student, so every two-seat roster
// leaves justified envy: the stable set is empty, and the one-seat diversity
// axiom check pinpoints the offending comparisons.
Scenario no_stable_scenario();

// Four students, two schools ("5" with two seats, "6" with one). School 5's
// order at assigned set {3} ties students 1 and 4. The round-by-round
// outcome sends 2,3 to school 5 and 4 to school 6 (1 unmatched) — stable,
// but Pareto-dominated by the equally stable matching {3,4} / {2}.
Scenario tie_dominated_scenario();

// Six students at a five-seat school. Type-A candidates get no bonus;
// type-B candidates get the square-root gap bonus with weight 1/2, so
// admitting the x+1st type-B student is worth (sqrt(x+1) - sqrt(x))/2 and
// the derived choice maximizes
//   v(A) = sum of member scores + (1/2) * sqrt(#type-B members).
// The last student's score is the scenario's free parameter.
Scenario sqrt_bonus_scenario(const Rat& sigma6);

// A single school plus an explicit choice table used to separate matchings
// that are stable for the priority rule from matchings the table itself
// would not produce.
struct ChoiceScenario {
  Instance inst;
  PreferenceProfile prefs;
  std::shared_ptr<const PriorityRule> rule;
  std::shared_ptr<const ChoiceFunction> choice;
};

// Two students tied at the empty assignment, one seat. The table resolves
// the tie toward student 2, so seating student 1 is stable (no strict envy)
// yet fails the table-based notion (2 would be chosen from {1,2}).
ChoiceScenario tie_counterexample();

// Three students of three different types, one seat, 1 ~ 2 > 3 at the empty
// assignment. The table prefers 2 whenever 3 also applies and 1 otherwise:
// every choice is consistent with the priorities, yet 2 is chosen from
// {1,2,3} and dropped from {1,2} — consistency does not imply
// substitutability.
ChoiceScenario nonsubstitutable_counterexample();

// Two schools driven by explicit choice functions. School "s" (two seats)
// uses a non-substitutable table under which student 1 is rejected from
// {1,2} but chosen from {1,2,3}; school "z" (one seat) ranks 4 > 1 > 2 > 3.
// Under truthful reports student 1 ends unmatched; first listing school z
// delays their application to s until 3 has applied, and they win a seat.
struct BrokenChoiceScenario {
  Instance inst;
  PreferenceProfile prefs;
  std::vector<std::shared_ptr<const ChoiceFunction>> choices;
};
BrokenChoiceScenario sp_broken_scenario();

// Two-seat school valued by v(A) = sum of scores + coeff * sqrt(#type-B
// members), with six pinned applicant pools and their unique v-maximizers.
// No ordered pair of slot priority orders reproduces all six choices; the
// exhaustive search over every pair certifies that.
struct ValuationCase {
  StudentSet applicants;
  StudentSet optimum;
};

struct ValuationScenario {
  std::vector<TypeId> type_of;  // six students; 1 = type A, 2 = type B
  std::vector<Rat> sigma;
  int capacity = 2;
  TypeId bonus_type = 2;
  double coeff = 0.5;
  std::vector<ValuationCase> cases;

  std::vector<double> scores() const;  // sigma as doubles for the oracle
};
ValuationScenario slot_defeating_scenario();

// Canonical text of the bundled two-school demo instance (the same document
// shipped under data/); parsing it yields a ready-to-match market.
std::string two_school_demo_json();

}  // namespace csm
