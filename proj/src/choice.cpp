#include "choice.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace csm {

namespace {

std::string candidate_name(StudentId i) {
  return i == kNoStudent ? std::string("@none") : std::to_string(i);
}

void add_witness(ChoiceCheck& check, int max_witnesses, const std::string& detail) {
  check.passed = false;
  if (static_cast<int>(check.witnesses.size()) < max_witnesses) check.witnesses.push_back(detail);
}

}  // namespace

// ---------------------------------------------------------------------------
// Canonical processing order.

std::vector<StudentId> canonical_order(const PriorityRule& rule) {
  const int n = rule.n_students();
  const StudentSet empty;

  // Within-type standing: how many same-type students strictly outrank i at
  // the empty assignment.
  std::vector<int> standing(n, 0);
  for (StudentId i = 0; i < n; ++i) {
    for (StudentId j = 0; j < n; ++j) {
      if (j == i || rule.type_of(j) != rule.type_of(i)) continue;
      if (rule.compare(empty, j, i) == Rank::Higher) ++standing[i];
    }
  }

  // The counts reproduce the pairwise comparisons exactly when the
  // within-type relation at the empty assignment is a weak order; verify
  // rather than assume, so an intransitive table is refused here instead of
  // silently producing an arbitrary processing order.
  for (StudentId i = 0; i < n; ++i) {
    for (StudentId j = i + 1; j < n; ++j) {
      if (rule.type_of(i) != rule.type_of(j)) continue;
      Rank r = rule.compare(empty, i, j);
      bool consistent = (r == Rank::Higher && standing[i] < standing[j]) ||
                        (r == Rank::Lower && standing[i] > standing[j]) ||
                        (r == Rank::Tied && standing[i] == standing[j]);
      require(consistent, "within-type standing at the empty assignment is not a weak order: "
                          "students " +
                              std::to_string(i) + " and " + std::to_string(j) +
                              " compare inconsistently with their strictly-outranked counts");
    }
  }

  std::vector<StudentId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](StudentId a, StudentId b) {
    if (rule.type_of(a) != rule.type_of(b)) return rule.type_of(a) < rule.type_of(b);
    if (standing[a] != standing[b]) return standing[a] < standing[b];
    return a < b;
  });
  return order;
}

// ---------------------------------------------------------------------------
// ChoiceFunction base.

ChoiceFunction::ChoiceFunction(int n_students, int capacity) : n_(n_students), capacity_(capacity) {
  require(n_students >= 0, "choice function needs a non-negative student count");
  require(capacity >= 1, "choice function needs capacity at least 1");
}

StudentSet ChoiceFunction::choose(const StudentSet& applicants) const {
  require(std::is_sorted(applicants.begin(), applicants.end()) &&
              std::adjacent_find(applicants.begin(), applicants.end()) == applicants.end(),
          "applicant set must be sorted and duplicate-free");
  for (StudentId i : applicants)
    require(i >= 0 && i < n_, "applicant id " + std::to_string(i) + " out of range");

  StudentSet chosen = do_choose(applicants);
  internal_check(std::is_sorted(chosen.begin(), chosen.end()),
                 "choice function returned an unsorted set");
  internal_check(static_cast<int>(chosen.size()) <= capacity_,
                 "choice function exceeded capacity " + std::to_string(capacity_) + " on " +
                     set_to_string(applicants) + ": returned " + set_to_string(chosen));
  internal_check(std::includes(applicants.begin(), applicants.end(), chosen.begin(), chosen.end()),
                 "choice function returned non-applicants on " + set_to_string(applicants) + ": " +
                     set_to_string(chosen));
  return chosen;
}

// ---------------------------------------------------------------------------
// DerivedChoice.

DerivedChoice::DerivedChoice(std::shared_ptr<const PriorityRule> rule)
    : ChoiceFunction(rule->n_students(), rule->capacity()),
      rule_(std::move(rule)),
      order_(canonical_order(*rule_)),
      position_(order_.size()) {
  for (int pos = 0; pos < static_cast<int>(order_.size()); ++pos) position_[order_[pos]] = pos;
}

StudentSet DerivedChoice::do_choose(const StudentSet& applicants) const {
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(applicants);
    if (it != memo_.end()) return it->second;
  }

  // Current roster in arrival order (oldest first) plus its sorted view.
  std::vector<StudentId> arrival;
  StudentSet roster;
  for (StudentId candidate : order_) {
    if (!set_contains(applicants, candidate)) continue;
    if (static_cast<int>(roster.size()) < capacity()) {
      if (rule_->is_acceptable(roster, candidate)) {
        arrival.push_back(candidate);
        roster = set_with(roster, candidate);
      }
      continue;
    }
    // At capacity the newcomer always enters the pool; the most recently
    // arrived member of the pool's lowest-priority group leaves (possibly the
    // newcomer itself). No acceptability test happens on this branch.
    arrival.push_back(candidate);
    StudentId ejected = tiebreak_most_recent(*rule_, arrival);
    arrival.erase(std::find(arrival.begin(), arrival.end(), ejected));
    roster = set_without(set_with(roster, candidate), ejected);
  }

  std::lock_guard<std::mutex> lock(memo_mutex_);
  memo_.emplace(applicants, roster);
  return roster;
}

// ---------------------------------------------------------------------------
// ExplicitChoice.

ExplicitChoice::ExplicitChoice(int n_students, int capacity, std::map<StudentSet, StudentSet> table)
    : ChoiceFunction(n_students, capacity), table_(std::move(table)) {
  for (const auto& [applicants, chosen] : table_) {
    require(static_cast<int>(chosen.size()) <= capacity,
            "explicit choice exceeds capacity on " + set_to_string(applicants));
    require(std::includes(applicants.begin(), applicants.end(), chosen.begin(), chosen.end()),
            "explicit choice on " + set_to_string(applicants) + " picks non-applicants: " +
                set_to_string(chosen));
  }
}

StudentSet ExplicitChoice::do_choose(const StudentSet& applicants) const {
  auto it = table_.find(applicants);
  require(it != table_.end(),
          "explicit choice table has no entry for applicant set " + set_to_string(applicants));
  return it->second;
}

// ---------------------------------------------------------------------------
// Exhaustive checks.

ChoiceCheck check_consistent(const ChoiceFunction& choice, const PriorityRule& rule,
                             int max_witnesses) {
  const int n = choice.n_students();
  require(n <= 16, "consistency check is exhaustive; instance too large");
  require(rule.n_students() == n && rule.capacity() == choice.capacity(),
          "choice function and priority rule describe different schools");

  ChoiceCheck check;
  for (const StudentSet& applicants : subsets_up_to(n, n)) {
    StudentSet chosen = choice.choose(applicants);
    StudentSet rejected;
    std::set_difference(applicants.begin(), applicants.end(), chosen.begin(), chosen.end(),
                        std::back_inserter(rejected));

    for (StudentId i : chosen) {
      StudentSet base = set_without(chosen, i);
      StudentSet others = rejected;
      others.push_back(kNoStudent);
      for (StudentId j : others) {
        ++check.checks;
        if (rule.compare(base, i, j) == Rank::Lower) {
          add_witness(check, max_witnesses,
                      "chosen " + std::to_string(i) + " ranks below " + candidate_name(j) +
                          " at " + set_to_string(base) + " (applicants " +
                          set_to_string(applicants) + ", chosen " + set_to_string(chosen) + ")");
        }
      }
    }

    if (static_cast<int>(chosen.size()) < choice.capacity() && chosen.size() < applicants.size()) {
      for (StudentId j : rejected) {
        ++check.checks;
        if (rule.compare(chosen, j, kNoStudent) != Rank::Lower) {
          add_witness(check, max_witnesses,
                      "capacity left over on " + set_to_string(applicants) + " yet unchosen " +
                          std::to_string(j) + " is acceptable at " + set_to_string(chosen));
        }
      }
    }
  }
  return check;
}

ChoiceCheck check_substitutable(const ChoiceFunction& choice, int max_witnesses) {
  const int n = choice.n_students();
  require(n <= 16, "substitutability check is exhaustive; instance too large");

  ChoiceCheck check;
  for (const StudentSet& applicants : subsets_up_to(n, n)) {
    StudentSet chosen = choice.choose(applicants);
    for (StudentId j = 0; j < n; ++j) {
      if (set_contains(applicants, j)) continue;
      StudentSet larger = set_with(applicants, j);
      StudentSet chosen_larger = choice.choose(larger);
      for (StudentId i : chosen_larger) {
        if (i == j) continue;
        ++check.checks;
        if (!set_contains(chosen, i)) {
          add_witness(check, max_witnesses,
                      std::to_string(i) + " is chosen from " + set_to_string(larger) +
                          " but not from " + set_to_string(applicants));
        }
      }
    }
  }
  return check;
}

ChoiceCheck check_size_monotonic(const ChoiceFunction& choice, int max_witnesses) {
  const int n = choice.n_students();
  require(n <= 16, "size monotonicity check is exhaustive; instance too large");

  ChoiceCheck check;
  for (const StudentSet& applicants : subsets_up_to(n, n)) {
    std::size_t size_here = choice.choose(applicants).size();
    for (StudentId j = 0; j < n; ++j) {
      if (set_contains(applicants, j)) continue;
      StudentSet larger = set_with(applicants, j);
      ++check.checks;
      if (choice.choose(larger).size() < size_here) {
        add_witness(check, max_witnesses,
                    "choice shrinks from " + std::to_string(size_here) + " on " +
                        set_to_string(applicants) + " to " +
                        std::to_string(choice.choose(larger).size()) + " on " +
                        set_to_string(larger));
      }
    }
  }
  return check;
}

ChoiceCheck check_rejection_consistency(const ChoiceFunction& choice, int max_witnesses) {
  const int n = choice.n_students();
  require(n <= 16, "rejection consistency check is exhaustive; instance too large");

  ChoiceCheck check;
  for (const StudentSet& applicants : subsets_up_to(n, n)) {
    StudentSet chosen = choice.choose(applicants);
    for (StudentId j = 0; j < n; ++j) {
      if (set_contains(applicants, j)) continue;
      StudentSet from_all = choice.choose(set_with(applicants, j));
      StudentSet from_chosen = choice.choose(set_with(chosen, j));
      ++check.checks;
      if (!std::includes(from_chosen.begin(), from_chosen.end(), from_all.begin(),
                         from_all.end())) {
        add_witness(check, max_witnesses,
                    "choice from " + set_to_string(set_with(applicants, j)) +
                        " is not contained in the choice from " +
                        set_to_string(set_with(chosen, j)));
      }
    }
  }
  return check;
}

ChoiceCheck check_tie_structure(const DerivedChoice& choice, int max_witnesses) {
  const int n = choice.n_students();
  require(n <= 16, "tie structure check is exhaustive; instance too large");
  const PriorityRule& rule = choice.rule();

  ChoiceCheck check;
  for (const StudentSet& applicants : subsets_up_to(n, n)) {
    StudentSet chosen = choice.choose(applicants);
    StudentSet rejected;
    std::set_difference(applicants.begin(), applicants.end(), chosen.begin(), chosen.end(),
                        std::back_inserter(rejected));
    for (StudentId i : chosen) {
      StudentSet base = set_without(chosen, i);
      for (StudentId j : rejected) {
        if (rule.compare(base, i, j) != Rank::Tied) continue;
        ++check.checks;
        if (rule.type_of(i) > rule.type_of(j)) {
          add_witness(check, max_witnesses,
                      "chosen " + std::to_string(i) + " ties rejected " + std::to_string(j) +
                          " at " + set_to_string(base) + " but has the later type");
        } else if (rule.type_of(i) == rule.type_of(j) &&
                   choice.canonical_position(i) > choice.canonical_position(j)) {
          add_witness(check, max_witnesses,
                      "chosen " + std::to_string(i) + " ties same-type rejected " +
                          std::to_string(j) + " at " + set_to_string(base) +
                          " but comes later in the processing order");
        }
      }
    }
  }
  return check;
}

}  // namespace csm
