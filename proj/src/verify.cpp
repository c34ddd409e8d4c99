#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "errors.hpp"

namespace csm {

namespace {

constexpr int kWitnessCap = 16;

void note(std::vector<std::string>& witnesses, const std::string& text) {
  if (static_cast<int>(witnesses.size()) < kWitnessCap) witnesses.push_back(text);
}

int count_type(const std::vector<TypeId>& type_of, const StudentSet& set, TypeId t) {
  int c = 0;
  for (StudentId i : set)
    if (type_of[i] == t) ++c;
  return c;
}

std::string matching_to_string(const Matching& m) {
  std::string out;
  for (SchoolId s = 0; s < static_cast<int>(m.roster.size()); ++s) {
    if (s) out += ' ';
    out += "s" + std::to_string(s) + "=" + set_to_string(m.roster[s]);
  }
  StudentSet unmatched;
  for (StudentId i = 0; i < static_cast<int>(m.assignment.size()); ++i)
    if (m.assignment[i] == kUnmatched) unmatched.push_back(i);
  out += " unmatched=" + set_to_string(unmatched);
  return out;
}

std::string list_to_string(const std::vector<SchoolId>& list) {
  std::string out = "(";
  for (std::size_t k = 0; k < list.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(list[k]);
  }
  return out + ")";
}

std::string school_name(SchoolId s) {
  return s == kUnmatched ? std::string("unmatched") : "school " + std::to_string(s);
}

void validate_rules(const Instance& inst,
                    const std::vector<std::shared_ptr<const PriorityRule>>& rules) {
  require(static_cast<int>(rules.size()) == inst.n_schools(),
          "expected one priority rule per school, got " + std::to_string(rules.size()));
  for (SchoolId s = 0; s < inst.n_schools(); ++s) {
    require(rules[s] != nullptr, "missing priority rule for school " + std::to_string(s));
    require(rules[s]->n_students() == inst.n_students() &&
                rules[s]->capacity() == inst.capacity[s],
            "priority rule for school " + std::to_string(s) +
                " disagrees with the instance on student count or capacity");
  }
}

void validate_input_matching(const Instance& inst, const Matching& m) {
  if (auto err = validate_matching(inst, m)) require(false, *err);
}

std::vector<std::unique_ptr<DerivedChoice>> derive_choices(
    const Instance& inst, const std::vector<std::shared_ptr<const PriorityRule>>& rules) {
  validate_rules(inst, rules);
  std::vector<std::unique_ptr<DerivedChoice>> derived;
  derived.reserve(rules.size());
  for (const auto& rule : rules) derived.push_back(std::make_unique<DerivedChoice>(rule));
  return derived;
}

std::vector<const ChoiceFunction*> as_pointers(
    const std::vector<std::unique_ptr<DerivedChoice>>& derived) {
  std::vector<const ChoiceFunction*> out;
  out.reserve(derived.size());
  for (const auto& c : derived) out.push_back(c.get());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Stability against the priority rules.

StabilityVerdict stability_verdict(const Instance& inst, const PreferenceProfile& prefs,
                                   const std::vector<std::shared_ptr<const PriorityRule>>& rules,
                                   const Matching& m) {
  validate_rules(inst, rules);
  validate_input_matching(inst, m);
  const int n = inst.n_students();

  StabilityVerdict v;
  for (StudentId i = 0; i < n; ++i) {
    SchoolId s = m.assignment[i];
    if (s != kUnmatched && !prefs.acceptable(i, s)) {
      v.individually_rational = false;
      note(v.witnesses, "student " + std::to_string(i) + " holds unacceptable " + school_name(s));
    }
  }
  for (SchoolId s = 0; s < inst.n_schools(); ++s) {
    for (StudentId i : m.roster[s]) {
      if (!rules[s]->is_acceptable(set_without(m.roster[s], i), i)) {
        v.individually_rational = false;
        note(v.witnesses, school_name(s) + " prefers a vacancy over held student " +
                              std::to_string(i) + " given " +
                              set_to_string(set_without(m.roster[s], i)));
      }
    }
  }

  for (StudentId i = 0; i < n; ++i) {
    for (SchoolId s : prefs.ranking[i]) {
      if (!prefs.prefers(i, s, m.assignment[i])) continue;
      if (static_cast<int>(m.roster[s].size()) < inst.capacity[s] &&
          rules[s]->is_acceptable(m.roster[s], i)) {
        v.non_wasteful = false;
        note(v.witnesses, "wasteful: student " + std::to_string(i) + " wants " + school_name(s) +
                              ", a seat is open, and the school would not leave it empty");
      }
      for (StudentId j : m.roster[s]) {
        if (rules[s]->compare(set_without(m.roster[s], j), i, j) == Rank::Higher) {
          v.fair = false;
          v.envy.push_back({i, j, s});
          note(v.witnesses, "student " + std::to_string(i) + " justifiedly envies " +
                                std::to_string(j) + " at " + school_name(s));
        }
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Stability against choice functions.

CStabilityVerdict c_stability_verdict(const Instance& inst, const PreferenceProfile& prefs,
                                      const std::vector<const ChoiceFunction*>& choices,
                                      const Matching& m) {
  require(static_cast<int>(choices.size()) == inst.n_schools(),
          "expected one choice function per school, got " + std::to_string(choices.size()));
  for (SchoolId s = 0; s < inst.n_schools(); ++s) {
    require(choices[s] != nullptr, "missing choice function for school " + std::to_string(s));
    require(choices[s]->n_students() == inst.n_students() &&
                choices[s]->capacity() == inst.capacity[s],
            "choice function for school " + std::to_string(s) +
                " disagrees with the instance on student count or capacity");
  }
  validate_input_matching(inst, m);

  CStabilityVerdict v;
  for (StudentId i = 0; i < inst.n_students(); ++i) {
    SchoolId s = m.assignment[i];
    if (s != kUnmatched && !prefs.acceptable(i, s)) {
      v.individually_rational = false;
      note(v.witnesses, "student " + std::to_string(i) + " holds unacceptable " + school_name(s));
    }
  }
  for (SchoolId s = 0; s < inst.n_schools(); ++s) {
    if (choices[s]->choose(m.roster[s]) != m.roster[s]) {
      v.chosen_fixed = false;
      note(v.witnesses, school_name(s) + " would not re-choose its roster " +
                            set_to_string(m.roster[s]));
    }
  }
  for (StudentId i = 0; i < inst.n_students(); ++i) {
    for (SchoolId s : prefs.ranking[i]) {
      if (!prefs.prefers(i, s, m.assignment[i])) continue;
      if (set_contains(m.roster[s], i)) continue;
      if (set_contains(choices[s]->choose(set_with(m.roster[s], i)), i)) {
        v.unblocked = false;
        note(v.witnesses, "student " + std::to_string(i) + " wants " + school_name(s) +
                              " and the school would pick them from " +
                              set_to_string(set_with(m.roster[s], i)));
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Enumeration.

std::vector<Matching> enumerate_all_matchings(const Instance& inst) {
  const int n = inst.n_students();
  const int m = inst.n_schools();
  require(n <= 8 && m <= 4, "exhaustive matching enumeration handles at most 8 students and 4 "
                            "schools; got " +
                                std::to_string(n) + " and " + std::to_string(m));

  std::vector<Matching> out;
  std::vector<SchoolId> assignment(n, kUnmatched);
  std::vector<int> load(m, 0);
  std::function<void(int)> fill = [&](int i) {
    if (i == n) {
      out.push_back(Matching::from_assignment(inst, assignment));
      return;
    }
    assignment[i] = kUnmatched;
    fill(i + 1);
    for (SchoolId s = 0; s < m; ++s) {
      if (load[s] >= inst.capacity[s]) continue;
      ++load[s];
      assignment[i] = s;
      fill(i + 1);
      assignment[i] = kUnmatched;
      --load[s];
    }
  };
  fill(0);
  return out;
}

std::vector<Matching> enumerate_stable(
    const Instance& inst, const PreferenceProfile& prefs,
    const std::vector<std::shared_ptr<const PriorityRule>>& rules) {
  std::vector<Matching> out;
  for (Matching& m : enumerate_all_matchings(inst))
    if (stability_verdict(inst, prefs, rules, m).stable()) out.push_back(std::move(m));
  return out;
}

std::vector<Matching> student_optimal_stable(const PreferenceProfile& prefs,
                                             const std::vector<Matching>& stable) {
  std::vector<Matching> out;
  for (const Matching& m : stable) {
    bool dominated = false;
    for (const Matching& other : stable) {
      if (pareto_dominates(prefs, other, m)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(m);
  }
  return out;
}

StabilityComparison compare_stability_notions(
    const Instance& inst, const PreferenceProfile& prefs,
    const std::vector<std::shared_ptr<const PriorityRule>>& rules) {
  auto derived = derive_choices(inst, rules);
  auto choices = as_pointers(derived);

  StabilityComparison cmp;
  for (const Matching& m : enumerate_all_matchings(inst)) {
    ++cmp.matchings;
    bool stable = stability_verdict(inst, prefs, rules, m).stable();
    bool c_stable = c_stability_verdict(inst, prefs, choices, m).c_stable();
    if (stable) ++cmp.stable_count;
    if (c_stable) ++cmp.c_stable_count;
    if (c_stable && !stable) note(cmp.c_stable_not_stable, matching_to_string(m));
    if (stable && !c_stable) note(cmp.stable_not_c_stable, matching_to_string(m));
  }
  return cmp;
}

// ---------------------------------------------------------------------------
// Strategy-proofness audit.

std::vector<std::vector<SchoolId>> all_preference_lists(int n_schools) {
  require(n_schools >= 0 && n_schools <= 4,
          "preference-list enumeration handles at most 4 schools");
  std::vector<std::vector<SchoolId>> out;
  for (const StudentSet& subset : subsets_up_to(n_schools, n_schools)) {
    std::vector<SchoolId> perm(subset.begin(), subset.end());
    do {
      out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

AuditReport audit_strategy_proofness_choice(const Instance& inst, const PreferenceProfile& prefs,
                                            const std::vector<const ChoiceFunction*>& choices,
                                            int max_group) {
  const int n = inst.n_students();
  const int m = inst.n_schools();
  require(n <= 6 && m <= 3, "strategy-proofness audit enumerates whole preference-list spaces; "
                            "limited to 6 students and 3 schools, got " +
                                std::to_string(n) + " and " + std::to_string(m));
  require(max_group >= 1 && max_group <= 2, "audit group size must be 1 or 2");

  AuditReport report;
  const SpdaOptions quiet;
  const Matching truth = spda(inst, prefs, choices, quiet).matching;
  const auto lists = all_preference_lists(m);

  auto gains = [&](StudentId i, const Matching& out) {
    return prefs.rank_of(i, out.assignment[i]) < prefs.rank_of(i, truth.assignment[i]);
  };

  for (StudentId i = 0; i < n; ++i) {
    for (const auto& list : lists) {
      if (list == prefs.ranking[i]) continue;
      PreferenceProfile reported = prefs;
      reported.ranking[i] = list;
      Matching out = spda(inst, reported, choices, quiet).matching;
      ++report.cases;
      if (gains(i, out)) {
        report.passed = false;
        note(report.witnesses,
             "student " + std::to_string(i) + " reports " + list_to_string(list) +
                 " and moves from " + school_name(truth.assignment[i]) + " to " +
                 school_name(out.assignment[i]));
      }
    }
  }

  if (max_group >= 2) {
    for (StudentId i = 0; i < n; ++i) {
      for (StudentId j = i + 1; j < n; ++j) {
        for (const auto& list_i : lists) {
          for (const auto& list_j : lists) {
            if (list_i == prefs.ranking[i] && list_j == prefs.ranking[j]) continue;
            PreferenceProfile reported = prefs;
            reported.ranking[i] = list_i;
            reported.ranking[j] = list_j;
            Matching out = spda(inst, reported, choices, quiet).matching;
            ++report.cases;
            if (gains(i, out) && gains(j, out)) {
              report.passed = false;
              note(report.witnesses,
                   "students " + std::to_string(i) + "," + std::to_string(j) + " report " +
                       list_to_string(list_i) + "," + list_to_string(list_j) +
                       " and both strictly gain");
            }
          }
        }
      }
    }
  }
  return report;
}

AuditReport audit_strategy_proofness(const Instance& inst, const PreferenceProfile& prefs,
                                     const std::vector<std::shared_ptr<const PriorityRule>>& rules,
                                     int max_group) {
  auto derived = derive_choices(inst, rules);
  return audit_strategy_proofness_choice(inst, prefs, as_pointers(derived), max_group);
}

// ---------------------------------------------------------------------------
// Bound-respecting reference choices.

namespace {

std::vector<StudentId> by_score_descending(const StudentSet& applicants,
                                           const std::vector<Rat>& sigma) {
  std::vector<StudentId> order(applicants);
  std::sort(order.begin(), order.end(),
            [&](StudentId a, StudentId b) { return Rat::cmp(sigma[a], sigma[b]) > 0; });
  for (std::size_t k = 1; k < order.size(); ++k)
    require(Rat::cmp(sigma[order[k - 1]], sigma[order[k]]) != 0,
            "bound-respecting reference choices need pairwise distinct scores; students " +
                std::to_string(order[k - 1]) + " and " + std::to_string(order[k]) + " tie");
  return order;
}

void validate_bounds(const StudentSet& applicants, const std::vector<TypeId>& type_of,
                     const std::vector<int>& bound, const char* what) {
  const int n_types = static_cast<int>(bound.size()) - 1;
  require(n_types >= 1, std::string(what) + " must cover at least one type");
  for (int t = 1; t <= n_types; ++t)
    require(bound[t] >= 1, std::string(what) + " must be at least 1 per type");
  for (StudentId i : applicants)
    require(type_of[i] >= 1 && type_of[i] <= n_types,
            "applicant " + std::to_string(i) + " has a type outside the bound vector");
}

}  // namespace

StudentSet reserves_choice(const StudentSet& applicants, const std::vector<TypeId>& type_of,
                           const std::vector<Rat>& sigma, const std::vector<int>& reserve,
                           int capacity) {
  validate_bounds(applicants, type_of, reserve, "reserves");
  int total = 0;
  for (std::size_t t = 1; t < reserve.size(); ++t) total += reserve[t];
  require(total <= capacity, "reserved seats exceed the capacity");

  const auto order = by_score_descending(applicants, sigma);
  StudentSet chosen;
  std::vector<int> taken(reserve.size(), 0);
  for (StudentId i : order) {
    if (taken[type_of[i]] < reserve[type_of[i]]) {
      chosen.push_back(i);
      ++taken[type_of[i]];
    }
  }
  for (StudentId i : order) {
    if (static_cast<int>(chosen.size()) >= capacity) break;
    if (std::find(chosen.begin(), chosen.end(), i) == chosen.end()) chosen.push_back(i);
  }
  return sorted_set(std::move(chosen));
}

StudentSet quotas_choice(const StudentSet& applicants, const std::vector<TypeId>& type_of,
                         const std::vector<Rat>& sigma, const std::vector<int>& quota,
                         int capacity) {
  validate_bounds(applicants, type_of, quota, "quotas");
  StudentSet chosen;
  std::vector<int> taken(quota.size(), 0);
  for (StudentId i : by_score_descending(applicants, sigma)) {
    if (static_cast<int>(chosen.size()) >= capacity) break;
    if (taken[type_of[i]] >= quota[type_of[i]]) continue;
    chosen.push_back(i);
    ++taken[type_of[i]];
  }
  return sorted_set(std::move(chosen));
}

std::optional<std::string> reserves_clause_witness(const StudentSet& applicants,
                                                   const StudentSet& chosen,
                                                   const std::vector<TypeId>& type_of,
                                                   const std::vector<Rat>& sigma,
                                                   const std::vector<int>& reserve, int capacity) {
  const int n_types = static_cast<int>(reserve.size()) - 1;
  StudentSet rejected;
  std::set_difference(applicants.begin(), applicants.end(), chosen.begin(), chosen.end(),
                      std::back_inserter(rejected));

  for (TypeId t = 1; t <= n_types; ++t) {
    int have = count_type(type_of, chosen, t);
    int want = std::min(reserve[t], count_type(type_of, applicants, t));
    if (have < want)
      return "type " + std::to_string(t) + " fills " + std::to_string(have) + " of " +
             std::to_string(want) + " reserved seats from " + set_to_string(applicants);
  }
  for (StudentId i : chosen) {
    for (StudentId j : rejected) {
      if (Rat::cmp(sigma[j], sigma[i]) <= 0) continue;
      if (type_of[i] == type_of[j])
        return "rejected " + std::to_string(j) + " outscores chosen same-type " +
               std::to_string(i) + " on " + set_to_string(applicants);
      if (count_type(type_of, chosen, type_of[i]) > reserve[type_of[i]])
        return "chosen " + std::to_string(i) + " is over-reserve while rejected " +
               std::to_string(j) + " outscores them on " + set_to_string(applicants);
    }
  }
  if (!rejected.empty() && static_cast<int>(chosen.size()) != capacity)
    return "someone is rejected from " + set_to_string(applicants) +
           " while the school is not full";
  return std::nullopt;
}

std::optional<std::string> quotas_clause_witness(const StudentSet& applicants,
                                                 const StudentSet& chosen,
                                                 const std::vector<TypeId>& type_of,
                                                 const std::vector<Rat>& sigma,
                                                 const std::vector<int>& quota, int capacity) {
  const int n_types = static_cast<int>(quota.size()) - 1;
  StudentSet rejected;
  std::set_difference(applicants.begin(), applicants.end(), chosen.begin(), chosen.end(),
                      std::back_inserter(rejected));

  for (TypeId t = 1; t <= n_types; ++t) {
    if (count_type(type_of, chosen, t) > quota[t])
      return "type " + std::to_string(t) + " exceeds its cap on " + set_to_string(applicants);
  }
  for (StudentId i : chosen) {
    for (StudentId j : rejected) {
      if (Rat::cmp(sigma[j], sigma[i]) <= 0) continue;
      if (type_of[i] == type_of[j])
        return "rejected " + std::to_string(j) + " outscores chosen same-type " +
               std::to_string(i) + " on " + set_to_string(applicants);
      if (count_type(type_of, chosen, type_of[j]) != quota[type_of[j]])
        return "rejected " + std::to_string(j) + " outscores chosen " + std::to_string(i) +
               " while their type cap is slack on " + set_to_string(applicants);
    }
  }
  for (StudentId i : rejected) {
    if (static_cast<int>(chosen.size()) != capacity &&
        count_type(type_of, chosen, type_of[i]) != quota[type_of[i]])
      return "rejected " + std::to_string(i) + " faces neither a full school nor a full type cap "
             "on " +
             set_to_string(applicants);
  }
  return std::nullopt;
}

namespace {

// Shared scaffolding for the reserve/quota school checks: strictness of every
// admissible comparison, per-set clause and greedy-equality checks, and
// consistency of the derived choice.
PresetCheck check_bounded_school(
    const std::shared_ptr<const AdjustedScoringRule>& rule, const std::vector<int>& bound,
    const std::function<StudentSet(const StudentSet&)>& reference,
    const std::function<std::optional<std::string>(const StudentSet&, const StudentSet&)>&
        clause_witness) {
  const int n = rule->n_students();
  const int q = rule->capacity();
  require(n <= 12, "bound-respecting school check is exhaustive; instance too large");
  require(static_cast<int>(bound.size()) == rule->n_types() + 1,
          "bound vector must cover every type (index 1..K)");

  PresetCheck check;
  for (const StudentSet& assigned : subsets_up_to(n, q - 1)) {
    std::vector<StudentId> candidates;
    for (StudentId i = 0; i < n; ++i)
      if (!set_contains(assigned, i)) candidates.push_back(i);
    candidates.push_back(kNoStudent);
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      for (std::size_t b = a + 1; b < candidates.size(); ++b) {
        ++check.cases;
        if (rule->compare(assigned, candidates[a], candidates[b]) == Rank::Tied) {
          check.passed = false;
          note(check.witnesses, "comparison ties at assigned set " + set_to_string(assigned));
        }
      }
    }
  }

  DerivedChoice derived(rule);
  for (const StudentSet& applicants : subsets_up_to(n, n)) {
    ++check.cases;
    StudentSet chosen = derived.choose(applicants);
    if (auto witness = clause_witness(applicants, chosen)) {
      check.passed = false;
      note(check.witnesses, *witness);
    }
    if (chosen != reference(applicants)) {
      check.passed = false;
      note(check.witnesses, "derived choice " + set_to_string(chosen) + " on " +
                                set_to_string(applicants) + " differs from the greedy reference " +
                                set_to_string(reference(applicants)));
    }
  }

  ChoiceCheck consistent = check_consistent(derived, *rule);
  check.cases += consistent.checks;
  if (!consistent.passed) {
    check.passed = false;
    for (const std::string& w : consistent.witnesses) note(check.witnesses, w);
  }
  return check;
}

}  // namespace

PresetCheck check_reserves_school(const std::shared_ptr<const AdjustedScoringRule>& rule,
                                  const std::vector<int>& reserve) {
  const int n = rule->n_students();
  std::vector<TypeId> type_of(n);
  std::vector<Rat> sigma(n);
  for (StudentId i = 0; i < n; ++i) {
    type_of[i] = rule->type_of(i);
    sigma[i] = rule->sigma(i);
  }
  return check_bounded_school(
      rule, reserve,
      [&, type_of, sigma](const StudentSet& J) {
        return reserves_choice(J, type_of, sigma, reserve, rule->capacity());
      },
      [&, type_of, sigma](const StudentSet& J, const StudentSet& C) {
        return reserves_clause_witness(J, C, type_of, sigma, reserve, rule->capacity());
      });
}

PresetCheck check_quotas_school(const std::shared_ptr<const AdjustedScoringRule>& rule,
                                const std::vector<int>& quota) {
  const int n = rule->n_students();
  std::vector<TypeId> type_of(n);
  std::vector<Rat> sigma(n);
  for (StudentId i = 0; i < n; ++i) {
    type_of[i] = rule->type_of(i);
    sigma[i] = rule->sigma(i);
  }
  return check_bounded_school(
      rule, quota,
      [&, type_of, sigma](const StudentSet& J) {
        return quotas_choice(J, type_of, sigma, quota, rule->capacity());
      },
      [&, type_of, sigma](const StudentSet& J, const StudentSet& C) {
        return quotas_clause_witness(J, C, type_of, sigma, quota, rule->capacity());
      });
}

// ---------------------------------------------------------------------------
// Soft-bounds fairness.

std::optional<std::string> soft_bounds_fairness_witness(
    const Instance& inst, const PreferenceProfile& prefs,
    const std::vector<SoftBoundsParams>& params, const Matching& m) {
  require(static_cast<int>(params.size()) == inst.n_schools(),
          "soft-bounds parameters must cover every school");
  validate_input_matching(inst, m);

  for (StudentId i = 0; i < inst.n_students(); ++i) {
    for (SchoolId s : prefs.ranking[i]) {
      if (!prefs.prefers(i, s, m.assignment[i])) continue;
      const SoftBoundsParams& p = params[s];
      const std::vector<TypeId>& type_of = inst.type_of[s];
      const StudentSet& roster = m.roster[s];
      const TypeId t = type_of[i];
      auto held = [&](TypeId u) { return count_type(type_of, roster, u); };
      auto outscored = [&](StudentId j) { return Rat::cmp(p.sigma[j], p.sigma[i]) < 0; };

      for (StudentId j : roster) {
        if (type_of[j] == t && outscored(j))
          return "student " + std::to_string(i) + " outscores same-type " + std::to_string(j) +
                 " held at " + school_name(s);
      }

      const int xt = held(t);
      if (xt >= p.quota[t]) {
        for (StudentId j : roster)
          if (held(type_of[j]) > p.quota[type_of[j]] && outscored(j))
            return "student " + std::to_string(i) + " outscores " + std::to_string(j) +
                   ", held over the upper bound at " + school_name(s);
      } else if (xt >= p.reserve[t]) {
        for (TypeId u = 1; u < static_cast<TypeId>(p.quota.size()); ++u)
          if (u != t && held(u) > p.quota[u])
            return "type " + std::to_string(u) + " sits over its upper bound at " +
                   school_name(s) + " while student " + std::to_string(i) +
                   "'s type is between its bounds";
        for (StudentId j : roster) {
          int xj = held(type_of[j]);
          if (xj > p.reserve[type_of[j]] && xj <= p.quota[type_of[j]] && outscored(j))
            return "student " + std::to_string(i) + " outscores " + std::to_string(j) +
                   ", held between the bounds at " + school_name(s);
        }
      } else {
        for (StudentId j : roster) {
          if (held(type_of[j]) > p.reserve[type_of[j]])
            return "student " + std::to_string(i) + "'s type is under its lower bound at " +
                   school_name(s) + " while type " + std::to_string(type_of[j]) +
                   " sits over its own";
          if (outscored(j))
            return "student " + std::to_string(i) + "'s type is under its lower bound at " +
                   school_name(s) + " yet they outscore held student " + std::to_string(j);
        }
      }
    }
  }
  return std::nullopt;
}

PresetCheck check_soft_bounds_equivalence(
    const Instance& inst, const PreferenceProfile& prefs,
    const std::vector<std::shared_ptr<const PriorityRule>>& rules,
    const std::vector<SoftBoundsParams>& params) {
  validate_rules(inst, rules);
  PresetCheck check;
  for (const Matching& m : enumerate_all_matchings(inst)) {
    ++check.cases;
    bool fair_priority = stability_verdict(inst, prefs, rules, m).fair;
    auto direct = soft_bounds_fairness_witness(inst, prefs, params, m);
    if (fair_priority != !direct.has_value()) {
      check.passed = false;
      note(check.witnesses,
           std::string("fairness verdicts disagree (priority says ") +
               (fair_priority ? "fair" : "unfair") + ", direct test says " +
               (direct ? "unfair: " + *direct : std::string("fair")) + ") on " +
               matching_to_string(m));
    }
  }
  return check;
}

// ---------------------------------------------------------------------------
// Subset-valuation oracle and slot-priority search.

StudentSet optimal_choice_oracle(const std::vector<double>& score,
                                 const std::vector<TypeId>& type_of, TypeId bonus_type,
                                 double coeff, const StudentSet& applicants, int capacity) {
  require(applicants.size() <= 20, "subset-valuation oracle handles at most 20 applicants");
  require(capacity >= 1, "subset-valuation oracle needs capacity at least 1");

  StudentSet best;
  double best_value = -1e300;
  StudentSet current;
  int bonus_count = 0;
  double sum = 0.0;

  std::function<void(std::size_t)> walk = [&](std::size_t idx) {
    if (idx == applicants.size()) {
      double value = sum + coeff * std::sqrt(static_cast<double>(bonus_count));
      if (value > best_value + 1e-9) {
        best_value = value;
        best = current;
      }
      return;
    }
    StudentId i = applicants[idx];
    if (static_cast<int>(current.size()) < capacity) {
      current.push_back(i);
      sum += score[i];
      if (type_of[i] == bonus_type) ++bonus_count;
      walk(idx + 1);
      if (type_of[i] == bonus_type) --bonus_count;
      sum -= score[i];
      current.pop_back();
    }
    walk(idx + 1);
  };
  walk(0);
  return best;  // applicants are sorted, so include-first keeps members sorted
}

StudentSet slot_specific_choose(const std::vector<std::vector<StudentId>>& slot_orders,
                                const StudentSet& applicants) {
  StudentSet available = applicants;
  StudentSet chosen;
  const std::size_t slots = std::min(slot_orders.size(), applicants.size());
  for (std::size_t k = 0; k < slots; ++k) {
    StudentId picked = kNoStudent;
    for (StudentId i : slot_orders[k]) {
      if (set_contains(available, i)) {
        picked = i;
        break;
      }
    }
    require(picked != kNoStudent,
            "slot order " + std::to_string(k) + " does not rank any remaining applicant");
    available = set_without(available, picked);
    chosen.push_back(picked);
  }
  return sorted_set(std::move(chosen));
}

SlotSearchReport slot_impossibility_search(const std::vector<SlotCase>& cases, int n_students) {
  require(n_students >= 1 && n_students <= 7,
          "slot-priority search enumerates permutation pairs; at most 7 students");
  require(!cases.empty(), "slot-priority search needs at least one required case");

  std::vector<std::vector<StudentId>> perms;
  std::vector<StudentId> perm(n_students);
  for (int i = 0; i < n_students; ++i) perm[i] = i;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  SlotSearchReport report;
  for (const auto& first : perms) {
    for (const auto& second : perms) {
      ++report.pairs;
      int matched = 0;
      bool first_three = true;
      for (std::size_t c = 0; c < cases.size(); ++c) {
        bool ok = slot_specific_choose({first, second}, cases[c].applicants) == cases[c].chosen;
        if (ok) ++matched;
        else if (c < 3) first_three = false;
      }
      report.max_cases_matched = std::max(report.max_cases_matched, matched);
      if (matched == static_cast<int>(cases.size())) ++report.full_matches;
      if (first_three && cases.size() >= 3) report.first_three_achievable = true;
    }
  }
  note(report.notes, "tried " + std::to_string(report.pairs) + " slot-order pairs; best matched " +
                         std::to_string(report.max_cases_matched) + " of " +
                         std::to_string(cases.size()) + " required behaviors");
  return report;
}

}  // namespace csm
