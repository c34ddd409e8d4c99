#pragma once

// Brute-force verification oracles, sized for desk-scale instances: direct
// stability checks against the priority definition, choice-based stability,
// exhaustive matching enumeration, strategy-proofness audits over complete
// preference-list spaces, reference implementations of bound-respecting
// choice rules with their defining-clause checkers, the soft-bounds fairness
// test, and a slot-priority search used to show certain choice behavior has
// no slot-specific representation.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "choice.hpp"
#include "mechanism.hpp"
#include "model.hpp"
#include "priority.hpp"
#include "rational.hpp"

namespace csm {

// ---------------------------------------------------------------------------
// Stability against the priority rules.

struct EnvyWitness {
  StudentId envier = kNoStudent;
  StudentId envied = kNoStudent;
  SchoolId school = kUnmatched;
};

struct StabilityVerdict {
  bool non_wasteful = true;
  bool individually_rational = true;
  bool fair = true;
  std::vector<std::string> witnesses;
  std::vector<EnvyWitness> envy;  // fairness violations, structured
  bool stable() const { return non_wasteful && individually_rational && fair; }
};

StabilityVerdict stability_verdict(const Instance& inst, const PreferenceProfile& prefs,
                                   const std::vector<std::shared_ptr<const PriorityRule>>& rules,
                                   const Matching& m);

// ---------------------------------------------------------------------------
// Stability against choice functions.

struct CStabilityVerdict {
  bool individually_rational = true;  // students accept their seats
  bool chosen_fixed = true;           // each school re-chooses exactly its roster
  bool unblocked = true;              // no school would pick an outside student who wants in
  std::vector<std::string> witnesses;
  bool c_stable() const { return individually_rational && chosen_fixed && unblocked; }
};

CStabilityVerdict c_stability_verdict(const Instance& inst, const PreferenceProfile& prefs,
                                      const std::vector<const ChoiceFunction*>& choices,
                                      const Matching& m);

// ---------------------------------------------------------------------------
// Exhaustive enumeration (guarded: at most 8 students and 4 schools).

std::vector<Matching> enumerate_all_matchings(const Instance& inst);

std::vector<Matching> enumerate_stable(const Instance& inst, const PreferenceProfile& prefs,
                                       const std::vector<std::shared_ptr<const PriorityRule>>& rules);

// The stable matchings no other stable matching Pareto-dominates.
std::vector<Matching> student_optimal_stable(const PreferenceProfile& prefs,
                                             const std::vector<Matching>& stable);

// Compares the two stability notions (priority-based vs choice-based with the
// derived choice functions) over every matching.
struct StabilityComparison {
  long long matchings = 0;
  long long stable_count = 0;
  long long c_stable_count = 0;
  std::vector<std::string> c_stable_not_stable;
  std::vector<std::string> stable_not_c_stable;
};

StabilityComparison compare_stability_notions(
    const Instance& inst, const PreferenceProfile& prefs,
    const std::vector<std::shared_ptr<const PriorityRule>>& rules);

// ---------------------------------------------------------------------------
// Strategy-proofness audit.

// Every strict preference list over a school set: the k-permutations of
// {0..m-1} for k = 0..m, ordered by the chosen subset (size, then members)
// and then lexicographically within a subset.
std::vector<std::vector<SchoolId>> all_preference_lists(int n_schools);

struct AuditReport {
  bool passed = true;
  std::vector<std::string> witnesses;
  long long cases = 0;  // mechanism runs evaluated
};

// Tries every unilateral misreport, then (for max_group >= 2) every joint
// report by every student pair with at least one member deviating; a witness
// is a deviation after which every group member strictly prefers their seat
// under their true preferences. Guarded: at most 3 schools and 6 students.
AuditReport audit_strategy_proofness(const Instance& inst, const PreferenceProfile& prefs,
                                     const std::vector<std::shared_ptr<const PriorityRule>>& rules,
                                     int max_group = 2);

AuditReport audit_strategy_proofness_choice(const Instance& inst, const PreferenceProfile& prefs,
                                            const std::vector<const ChoiceFunction*>& choices,
                                            int max_group = 2);

// ---------------------------------------------------------------------------
// Bound-respecting reference choices and their defining clauses.
// Scores must be pairwise distinct among the applicants involved.

// Reserve-respecting greedy: per type the score-top min(reserve_t, supply)
// applicants, then the remaining seats go by score across what is left.
StudentSet reserves_choice(const StudentSet& applicants, const std::vector<TypeId>& type_of,
                           const std::vector<Rat>& sigma, const std::vector<int>& reserve,
                           int capacity);

// Quota-capped greedy: scan by descending score, admit while the school has a
// seat and the applicant's type is below its cap.
StudentSet quotas_choice(const StudentSet& applicants, const std::vector<TypeId>& type_of,
                         const std::vector<Rat>& sigma, const std::vector<int>& quota,
                         int capacity);

// First violated defining clause of a reserve choice (chosen from applicants),
// or nullopt when all three hold.
std::optional<std::string> reserves_clause_witness(const StudentSet& applicants,
                                                   const StudentSet& chosen,
                                                   const std::vector<TypeId>& type_of,
                                                   const std::vector<Rat>& sigma,
                                                   const std::vector<int>& reserve, int capacity);

std::optional<std::string> quotas_clause_witness(const StudentSet& applicants,
                                                 const StudentSet& chosen,
                                                 const std::vector<TypeId>& type_of,
                                                 const std::vector<Rat>& sigma,
                                                 const std::vector<int>& quota, int capacity);

struct PresetCheck {
  bool passed = true;
  std::vector<std::string> witnesses;
  long long cases = 0;
};

// For a school with the reserve bonus schedule, distinct scores, and a
// negative floor: every admissible comparison is strict, the derived choice
// satisfies the reserve clauses on every applicant set, matches the greedy
// reference, and is consistent with the rule.
PresetCheck check_reserves_school(const std::shared_ptr<const AdjustedScoringRule>& rule,
                                  const std::vector<int>& reserve);

// Same for the quota schedule (floor 2).
PresetCheck check_quotas_school(const std::shared_ptr<const AdjustedScoringRule>& rule,
                                const std::vector<int>& quota);

// ---------------------------------------------------------------------------
// Soft-bounds fairness.

struct SoftBoundsParams {
  std::vector<Rat> sigma;    // [student]
  std::vector<int> reserve;  // index 1..K
  std::vector<int> quota;    // index 1..K, quota_t >= reserve_t
};

// Direct soft-bounds fairness test: for every (student, preferred school)
// pair, everyone held of the student's type scores at least as high, and the
// case keyed on that type's held count (at/above the upper bound, between
// the bounds, below the lower bound) imposes its score and count conditions.
// Returns the first violation, or nullopt when fair.
std::optional<std::string> soft_bounds_fairness_witness(
    const Instance& inst, const PreferenceProfile& prefs,
    const std::vector<SoftBoundsParams>& params, const Matching& m);

// Over every matching: priority fairness against `rules` coincides with the
// direct soft-bounds test.
PresetCheck check_soft_bounds_equivalence(const Instance& inst, const PreferenceProfile& prefs,
                                          const std::vector<std::shared_ptr<const PriorityRule>>& rules,
                                          const std::vector<SoftBoundsParams>& params);

// ---------------------------------------------------------------------------
// Subset-valuation oracle and slot-priority search.

// Maximizes sum of member scores plus coeff * sqrt(#members of bonus_type)
// over subsets of `applicants` with at most `capacity` members. Exhaustive
// (at most 20 applicants); ties keep the first optimum in include-first
// depth-first order.
StudentSet optimal_choice_oracle(const std::vector<double>& score,
                                 const std::vector<TypeId>& type_of, TypeId bonus_type,
                                 double coeff, const StudentSet& applicants, int capacity);

// Slot-specific linear priorities: the first min(|applicants|, #slots) slots
// act in order, each admitting its highest-ranked applicant still available.
StudentSet slot_specific_choose(const std::vector<std::vector<StudentId>>& slot_orders,
                                const StudentSet& applicants);

struct SlotCase {
  StudentSet applicants;
  StudentSet chosen;
};

struct SlotSearchReport {
  long long pairs = 0;         // slot-order pairs tried
  long long full_matches = 0;  // pairs reproducing every case
  int max_cases_matched = 0;
  bool first_three_achievable = false;  // some pair reproduces cases 0..2
  std::vector<std::string> notes;
};

// Tries every ordered pair of slot priority orders (permutations of all
// students) for a two-seat school against the required case behavior.
SlotSearchReport slot_impossibility_search(const std::vector<SlotCase>& cases, int n_students);

}  // namespace csm
