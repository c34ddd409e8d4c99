#pragma once

// School choice functions over assignment-dependent priority rules.
//
// The central construction is DerivedChoice: applicants are processed in a
// canonical order (by type, then within-type standing, then external id);
// below capacity an applicant is admitted exactly when acceptable at the
// current roster, and at capacity the most recently arrived member of the
// lowest-priority group is ejected. For rules passing the structural axioms
// the result is consistent, substitutable, and size monotonic; the checkers
// at the bottom verify those properties exhaustively at desk scale.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "model.hpp"
#include "priority.hpp"

namespace csm {

// Processing order used by the derived choice construction: students sorted
// by (type ascending, within-type standing at the empty assignment, external
// position ascending). The within-type standing of i is the number of
// same-type students strictly preferred to i at the empty assignment; the
// sort verifies pairwise that these counts reproduce the comparisons and
// refuses when the within-type relation at the empty assignment is not a
// weak order.
std::vector<StudentId> canonical_order(const PriorityRule& rule);

class ChoiceFunction {
 public:
  ChoiceFunction(int n_students, int capacity);
  virtual ~ChoiceFunction() = default;

  int n_students() const { return n_; }
  int capacity() const { return capacity_; }

  // The chosen subset of `applicants` (a sorted set of student ids in range).
  // Whatever the concrete implementation returns is checked against the two
  // hard contracts — C(J) is a subset of J and |C(J)| never exceeds the
  // capacity — and a violation aborts with diagnostics.
  StudentSet choose(const StudentSet& applicants) const;

 private:
  virtual StudentSet do_choose(const StudentSet& applicants) const = 0;

  int n_ = 0;
  int capacity_ = 0;
};

// The derived choice function over a priority rule. Values are memoized per
// applicant set and derived lazily: precomputing all 2^n subsets is
// infeasible, and a full mechanism run only ever touches a linear number of
// pools.
class DerivedChoice : public ChoiceFunction {
 public:
  explicit DerivedChoice(std::shared_ptr<const PriorityRule> rule);

  const PriorityRule& rule() const { return *rule_; }
  const std::vector<StudentId>& processing_order() const { return order_; }
  // Position of each student in the processing order.
  int canonical_position(StudentId i) const { return position_[i]; }

 private:
  StudentSet do_choose(const StudentSet& applicants) const override;

  std::shared_ptr<const PriorityRule> rule_;
  std::vector<StudentId> order_;
  std::vector<int> position_;

  mutable std::mutex memo_mutex_;
  mutable std::map<StudentSet, StudentSet> memo_;
};

// A choice function given by an explicit table. Used for counterexample
// fixtures (deliberately non-substitutable tables and the like). Entries are
// validated (subset, capacity) at construction; querying an absent applicant
// set is a domain error.
class ExplicitChoice : public ChoiceFunction {
 public:
  ExplicitChoice(int n_students, int capacity, std::map<StudentSet, StudentSet> table);

 private:
  StudentSet do_choose(const StudentSet& applicants) const override;

  std::map<StudentSet, StudentSet> table_;
};

// ---------------------------------------------------------------------------
// Exhaustive structural checks (guarded to n <= 16 students).

struct ChoiceCheck {
  bool passed = true;
  std::vector<std::string> witnesses;
  long long checks = 0;
};

// Consistency of a choice function with a priority rule: (1) every chosen i
// weakly outranks every unchosen j and the outside option at C(J)\{i}; and
// (2) leftover capacity with leftover applicants means every unchosen
// applicant is unacceptable at C(J).
ChoiceCheck check_consistent(const ChoiceFunction& choice, const PriorityRule& rule,
                             int max_witnesses = 4);

// Substitutability: i chosen from J+{j} (i != j) stays chosen from J.
ChoiceCheck check_substitutable(const ChoiceFunction& choice, int max_witnesses = 4);

// Size monotonicity along single-element additions: |C(J+{j})| >= |C(J)|
// (which gives J subset J' => |C(J)| <= |C(J')| along any chain).
ChoiceCheck check_size_monotonic(const ChoiceFunction& choice, int max_witnesses = 4);

// Rejection consistency: C(J+{j}) is contained in C(C(J)+{j}) — dropping
// already-rejected applicants never changes who is chosen.
ChoiceCheck check_rejection_consistency(const ChoiceFunction& choice, int max_witnesses = 4);

// Tie structure of the derived choice: whenever a chosen i ties an unchosen j
// at C(J)\{i}, i's type is no later than j's in the canonical numbering, and
// within the same type i precedes j in the processing order.
ChoiceCheck check_tie_structure(const DerivedChoice& choice, int max_witnesses = 4);

}  // namespace csm
