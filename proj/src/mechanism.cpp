#include "mechanism.hpp"

#include <algorithm>
#include <numeric>

#include "errors.hpp"

namespace csm {

SpdaResult spda(const Instance& inst, const PreferenceProfile& prefs,
                const std::vector<const ChoiceFunction*>& choices, const SpdaOptions& opt) {
  const int n = inst.n_students();
  const int m = inst.n_schools();

  require(static_cast<int>(prefs.ranking.size()) == n,
          "preference profile covers " + std::to_string(prefs.ranking.size()) +
              " students, instance has " + std::to_string(n));
  for (StudentId i = 0; i < n; ++i) {
    std::vector<SchoolId> seen;
    for (SchoolId s : prefs.ranking[i]) {
      require(s >= 0 && s < m, "student " + std::to_string(i) + " ranks unknown school " +
                                   std::to_string(s));
      require(std::find(seen.begin(), seen.end(), s) == seen.end(),
              "student " + std::to_string(i) + " ranks school " + std::to_string(s) + " twice");
      seen.push_back(s);
    }
  }
  require(static_cast<int>(choices.size()) == m,
          "expected one choice function per school, got " + std::to_string(choices.size()));
  for (SchoolId s = 0; s < m; ++s) {
    require(choices[s] != nullptr, "missing choice function for school " + std::to_string(s));
    require(choices[s]->n_students() == n && choices[s]->capacity() == inst.capacity[s],
            "choice function for school " + std::to_string(s) +
                " disagrees with the instance on student count or capacity");
  }

  std::vector<StudentId> proposer_rank(n);
  if (opt.proposer_priority.empty()) {
    std::iota(proposer_rank.begin(), proposer_rank.end(), 0);
  } else {
    require(static_cast<int>(opt.proposer_priority.size()) == n,
            "proposer priority must be a permutation of all students");
    std::vector<bool> seen(n, false);
    for (int pos = 0; pos < n; ++pos) {
      StudentId i = opt.proposer_priority[pos];
      require(i >= 0 && i < n && !seen[i],
              "proposer priority must be a permutation of all students");
      seen[i] = true;
      proposer_rank[i] = pos;
    }
  }

  std::vector<int> next_try(n, 0);                       // index into ranking[i]
  std::vector<SchoolId> held_at(n, kUnmatched);          // current hold, if any
  std::vector<StudentSet> roster(m);                     // current holds per school
  std::vector<std::vector<bool>> rejected_by(n, std::vector<bool>(m, false));

  SpdaResult result;
  result.trace.captured = opt.capture_trace;

  const int round_cap = 2 * n * m + 2;
  while (true) {
    // Proposer: the eligible unmatched student first in proposer order, with
    // their pointer advanced past schools that already rejected them.
    StudentId proposer = kNoStudent;
    for (StudentId i = 0; i < n; ++i) {
      if (held_at[i] != kUnmatched) continue;
      auto& ptr = next_try[i];
      const auto& list = prefs.ranking[i];
      while (ptr < static_cast<int>(list.size()) && rejected_by[i][list[ptr]]) ++ptr;
      if (ptr >= static_cast<int>(list.size())) continue;
      if (proposer == kNoStudent || proposer_rank[i] < proposer_rank[proposer]) proposer = i;
    }
    if (proposer == kNoStudent) break;

    internal_check(result.trace.total_rounds < round_cap,
                   "deferred acceptance exceeded " + std::to_string(round_cap) +
                       " rounds; a choice function is not behaving like one");
    ++result.trace.total_rounds;

    SchoolId s = prefs.ranking[proposer][next_try[proposer]];
    StudentSet pool = set_with(roster[s], proposer);
    StudentSet held = choices[s]->choose(pool);
    StudentSet dropped;
    std::set_difference(pool.begin(), pool.end(), held.begin(), held.end(),
                        std::back_inserter(dropped));

    for (StudentId i : dropped) {
      rejected_by[i][s] = true;
      if (held_at[i] == s) held_at[i] = kUnmatched;
    }
    for (StudentId i : held) held_at[i] = s;
    roster[s] = held;

    if (opt.capture_trace) {
      SpdaRound entry;
      entry.round = result.trace.total_rounds;
      entry.proposer = proposer;
      entry.school = s;
      entry.pool = pool;
      entry.held = held;
      entry.rejected = dropped;
      result.trace.rounds.push_back(std::move(entry));
    }
  }

  // Every student ends at the first listed school that never rejected them,
  // or unmatched with every listed school having rejected them.
  for (StudentId i = 0; i < n; ++i) {
    for (SchoolId s : prefs.ranking[i]) {
      if (!rejected_by[i][s]) {
        internal_check(held_at[i] == s,
                       "student " + std::to_string(i) + " should hold school " +
                           std::to_string(s) + ", the first school that never rejected them");
        break;
      }
      internal_check(held_at[i] != s, "student " + std::to_string(i) + " holds school " +
                                          std::to_string(s) + " after being rejected by it");
    }
  }

  result.matching = Matching::from_assignment(inst, std::move(held_at));
  return result;
}

SpdaResult phi_bar(const Instance& inst, const PreferenceProfile& prefs,
                   const std::vector<std::shared_ptr<const PriorityRule>>& rules,
                   const SpdaOptions& opt) {
  const int m = inst.n_schools();
  require(static_cast<int>(rules.size()) == m,
          "expected one priority rule per school, got " + std::to_string(rules.size()));

  std::vector<std::unique_ptr<DerivedChoice>> derived;
  derived.reserve(m);
  for (SchoolId s = 0; s < m; ++s) {
    require(rules[s] != nullptr, "missing priority rule for school " + std::to_string(s));
    require(rules[s]->n_students() == inst.n_students() &&
                rules[s]->capacity() == inst.capacity[s],
            "priority rule for school " + std::to_string(s) +
                " disagrees with the instance on student count or capacity");
    derived.push_back(std::make_unique<DerivedChoice>(rules[s]));
  }

  std::vector<const ChoiceFunction*> choices;
  choices.reserve(m);
  for (const auto& c : derived) choices.push_back(c.get());
  return spda(inst, prefs, choices, opt);
}

}  // namespace csm
