#pragma once

// Assignment-dependent priorities. A school's priority rule supplies, for
// every assigned set J with |J| <= capacity-1, a weak order over the
// remaining students plus the outside option. Two concrete rules:
//
//  * AdjustedScoringRule — f_i(J) = sigma_i + alpha_{type(i)}(|J of i's type|),
//    with a constant floor score for the outside option. Bonus tables are
//    non-increasing in the count. Comparisons are exact rationals unless a
//    type uses the diminishing square-root bonus, in which case comparisons
//    run in floating point with a 1e-9 tie tolerance.
//  * TablePriorityRule — an explicit weak order (indifference classes) stored
//    for every admissible assigned set.
//
// Free functions implement the structural checks a rule must pass for the
// derived choice machinery to behave (monotone-in-diversity, within-type
// order invariance, clone swap consistency), the cross-assignment
// transitivity property, lowest-priority sets, and the most-recent tie-break
// scan used by the derived choice function.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"
#include "rational.hpp"

namespace csm {

enum class Rank { Higher, Tied, Lower };

inline Rank invert(Rank r) {
  if (r == Rank::Higher) return Rank::Lower;
  if (r == Rank::Lower) return Rank::Higher;
  return Rank::Tied;
}

class PriorityRule {
 public:
  PriorityRule(int n_students, int capacity, std::vector<TypeId> type_of);
  virtual ~PriorityRule() = default;

  int n_students() const { return n_; }
  int capacity() const { return capacity_; }
  TypeId type_of(StudentId i) const { return i == kNoStudent ? 0 : type_of_[i]; }
  int n_types() const { return n_types_; }

  // Compares candidates a and b given assigned set `assigned`. Candidates are
  // student ids or kNoStudent for the outside option; they must not belong to
  // `assigned`, and |assigned| must be at most capacity-1 (the order is
  // undefined once a school is full).
  Rank compare(const StudentSet& assigned, StudentId a, StudentId b) const;

  // Tied-with-outside-option counts as acceptable.
  bool is_acceptable(const StudentSet& assigned, StudentId i) const {
    return compare(assigned, i, kNoStudent) != Rank::Lower;
  }

  // True when comparisons are exact (no floating-point tolerance involved).
  virtual bool exact() const = 0;

 protected:
  virtual Rank do_compare(const StudentSet& assigned, StudentId a, StudentId b) const = 0;
  int count_of_type(const StudentSet& assigned, TypeId t) const;

  // Widens the type universe beyond the types students currently hold: a
  // rule may define bonuses for types nobody in the pool has.
  void expand_types(int n_types) { n_types_ = std::max(n_types_, n_types); }

 private:
  int n_ = 0;
  int capacity_ = 0;
  int n_types_ = 0;
  std::vector<TypeId> type_of_;
};

// Bonus schedule for one type: either an explicit non-increasing table on
// counts 0..capacity, or the diminishing square-root gap
// alpha(x) = weight * (sqrt(x+1) - sqrt(x)).
struct AlphaSpec {
  bool sqrt_gap = false;
  Rat weight;              // used when sqrt_gap
  std::vector<Rat> table;  // used otherwise; size capacity+1

  bool exact() const { return !sqrt_gap; }
};

class AdjustedScoringRule : public PriorityRule {
 public:
  AdjustedScoringRule(int n_students, int capacity, std::vector<TypeId> type_of,
                      std::vector<Rat> sigma, Rat sigma_floor, std::vector<AlphaSpec> alpha);

  bool exact() const override { return exact_; }
  const Rat& sigma(StudentId i) const { return sigma_[i]; }
  const Rat& sigma_floor() const { return floor_; }
  const AlphaSpec& alpha(TypeId t) const { return alpha_[t]; }

  // Adjusted score of a candidate given the assigned set. Exact form throws
  // when the rule mixes in square-root bonuses; the real form always works.
  Rat score_exact(const StudentSet& assigned, StudentId i) const;
  long double score_real(const StudentSet& assigned, StudentId i) const;

 protected:
  Rank do_compare(const StudentSet& assigned, StudentId a, StudentId b) const override;

 private:
  std::vector<Rat> sigma_;
  Rat floor_;
  std::vector<AlphaSpec> alpha_;  // index 1..n_types; [0] unused
  bool exact_ = true;
};

// One stored weak order: indifference classes from highest to lowest
// priority; kNoStudent marks the outside option.
struct StoredOrder {
  StudentSet assigned;
  std::vector<std::vector<StudentId>> classes;
};

class TablePriorityRule : public PriorityRule {
 public:
  TablePriorityRule(int n_students, int capacity, std::vector<TypeId> type_of,
                    const std::vector<StoredOrder>& orders);

  bool exact() const override { return true; }

  // True when an order is stored for every assigned set with size < capacity.
  bool complete() const;
  // Missing assigned sets (empty when complete). Used for hard parse errors.
  std::vector<StudentSet> missing_orders() const;

 protected:
  Rank do_compare(const StudentSet& assigned, StudentId a, StudentId b) const override;

 private:
  // Per assigned set: priority level of every candidate (index n_students()
  // holds the outside option; members of the assigned set hold -1).
  std::map<StudentSet, std::vector<int>> levels_;
};

// ---------------------------------------------------------------------------
// Structural checks.

struct AxiomWitness {
  std::string axiom;
  std::string detail;
};

struct AxiomCheck {
  bool passed = true;
  std::vector<AxiomWitness> witnesses;
  long long checks = 0;
};

struct AxiomReport {
  AxiomCheck diversity_monotone;   // higher same-type count never helps a candidate
  AxiomCheck within_type_invariant;  // same-type comparisons do not depend on J
  AxiomCheck clone_swap;             // swapping same-type clones between J and the
                                     // candidate slot preserves strict comparisons
  bool sampled = false;              // true when spaces were too large to enumerate
  long long total_checks() const {
    return diversity_monotone.checks + within_type_invariant.checks + clone_swap.checks;
  }
  bool all_passed() const {
    return diversity_monotone.passed && within_type_invariant.passed && clone_swap.passed;
  }
};

struct AxiomCheckOptions {
  // Enumerate exhaustively while the estimated comparison count stays within
  // this budget; beyond it, fall back to seeded random sampling.
  long long full_budget = 50'000'000;
  long long sample_rounds = 200'000;
  std::uint64_t seed = 1;
  int max_witnesses = 4;
};

AxiomReport check_axioms(const PriorityRule& rule, const AxiomCheckOptions& opt = {});

// Cross-assignment transitivity: for all J with |J| <= capacity-2 and
// distinct i,j,k outside J, i >^{J+k} j and j >^{J+i} k imply i >^{J+j} k.
// Returns a witness description on failure.
std::optional<std::string> check_cross_transitivity(const PriorityRule& rule);

// Every group of size 2..capacity+1 has a nonempty lowest-priority set.
std::optional<std::string> check_lowest_nonempty(const PriorityRule& rule);

// Members of `group` with lowest priority within it: i that strictly outranks
// no other member j at group-minus-both. Requires 2 <= |group| <= capacity+1.
StudentSet lowest_priority_within(const PriorityRule& rule, const StudentSet& group);

// The most-recent-arrival tie-break scan. `arrival` lists the same students
// as the pool in arrival order (newest last). Starting from the newcomer, the
// scan walks arrivals oldest-first (newcomer re-scanned last) and hands the
// baton to any scanned member the current candidate weakly outranks at
// pool-minus-both. Under the structural checks the result is the
// arrival-latest member of lowest_priority_within(pool).
StudentId tiebreak_most_recent(const PriorityRule& rule, const std::vector<StudentId>& arrival);

// ---------------------------------------------------------------------------
// Bonus-table presets.

enum class PresetKind {
  LinearDecay,        // alpha(x) = 2*(reserve - (x+1)); floor is the -infinity sentinel
  Reserves,           // alpha(x) = 2 while x < reserve else 0; negative floor
  Quotas,             // same alpha as Reserves; floor = 2 caps each type at its bound
  SoftBounds,         // alpha(x) = 4 below reserve, 2 below quota, else 0; negative floor
  ReservesAndQuotas,  // SoftBounds alpha with floor = 2 (hard upper, soft lower)
  FlatBonus,          // constant per-type bonus
  DiminishingSqrt,    // weight * (sqrt(x+1) - sqrt(x))
};

std::optional<PresetKind> preset_kind_from_string(const std::string& name);
std::string preset_kind_to_string(PresetKind kind);

// Stand-in for minus infinity in floor scores (low enough to rank below every
// achievable adjusted score at desk scale).
inline const Rat kFloorNegInfinity = Rat(-1'000'000);

struct PresetParams {
  std::vector<int> reserve;   // per type 1..K
  std::vector<int> quota;     // per type 1..K (soft-bounds family)
  std::vector<Rat> bonus;     // per type 1..K (flat bonus)
  std::vector<Rat> weight;    // per type 1..K (diminishing sqrt; 0 = no bonus)
  std::optional<Rat> sigma_floor;  // overrides the preset's default floor
};

struct PresetResult {
  std::vector<AlphaSpec> alpha;  // index 1..K; [0] unused
  Rat sigma_floor;
};

PresetResult preset_alpha(PresetKind kind, int capacity, int n_types, const PresetParams& params);

}  // namespace csm
