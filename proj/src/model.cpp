#include "model.hpp"

#include <functional>
#include <sstream>

namespace csm {

bool set_contains(const StudentSet& set, StudentId i) {
  return std::binary_search(set.begin(), set.end(), i);
}

StudentSet set_with(const StudentSet& set, StudentId i) {
  StudentSet out = set;
  auto it = std::lower_bound(out.begin(), out.end(), i);
  if (it == out.end() || *it != i) out.insert(it, i);
  return out;
}

StudentSet set_without(const StudentSet& set, StudentId i) {
  StudentSet out = set;
  auto it = std::lower_bound(out.begin(), out.end(), i);
  if (it != out.end() && *it == i) out.erase(it);
  return out;
}

StudentSet sorted_set(StudentSet unsorted) {
  std::sort(unsorted.begin(), unsorted.end());
  unsorted.erase(std::unique(unsorted.begin(), unsorted.end()), unsorted.end());
  return unsorted;
}

std::string set_to_string(const StudentSet& set) {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) out << ',';
    out << set[k];
  }
  out << '}';
  return out.str();
}

std::vector<StudentSet> subsets_up_to(int n, int max_size) {
  require(n >= 0 && max_size >= 0, "subsets_up_to: negative arguments");
  std::vector<StudentSet> out;
  StudentSet current;
  // Depth-first by size: emit all subsets of each size in lexicographic order.
  std::function<void(int, int)> rec = [&](int start, int remaining) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (int i = start; i <= n - remaining; ++i) {
      current.push_back(i);
      rec(i + 1, remaining - 1);
      current.pop_back();
    }
  };
  for (int size = 0; size <= std::min(n, max_size); ++size) rec(0, size);
  return out;
}

int PreferenceProfile::rank_of(StudentId i, SchoolId s) const {
  const auto& list = ranking[i];
  if (s == kUnmatched) return static_cast<int>(list.size());
  for (std::size_t k = 0; k < list.size(); ++k)
    if (list[k] == s) return static_cast<int>(k);
  return static_cast<int>(list.size()) + 1;
}

bool PreferenceProfile::prefers(StudentId i, SchoolId a, SchoolId b) const {
  return rank_of(i, a) < rank_of(i, b);
}

bool PreferenceProfile::acceptable(StudentId i, SchoolId s) const {
  return s != kUnmatched && rank_of(i, s) < static_cast<int>(ranking[i].size());
}

Matching Matching::from_assignment(const Instance& inst, std::vector<SchoolId> assignment) {
  require(static_cast<int>(assignment.size()) == inst.n_students(),
          "assignment must cover every student");
  Matching m;
  m.assignment = std::move(assignment);
  m.roster.assign(inst.n_schools(), {});
  for (StudentId i = 0; i < inst.n_students(); ++i) {
    SchoolId s = m.assignment[i];
    if (s == kUnmatched) continue;
    require(s >= 0 && s < inst.n_schools(), "assignment references unknown school");
    m.roster[s].push_back(i);
  }
  return m;
}

std::optional<std::string> validate_matching(const Instance& inst, const Matching& m) {
  const int n = inst.n_students();
  const int msz = inst.n_schools();
  if (static_cast<int>(m.assignment.size()) != n) return "assignment does not cover every student";
  if (static_cast<int>(m.roster.size()) != msz) return "roster list does not cover every school";
  for (StudentId i = 0; i < n; ++i) {
    SchoolId s = m.assignment[i];
    if (s != kUnmatched && (s < 0 || s >= msz))
      return "student " + inst.student_ids[i] + " assigned to unknown school";
  }
  for (SchoolId s = 0; s < msz; ++s) {
    const StudentSet& r = m.roster[s];
    if (!std::is_sorted(r.begin(), r.end()) || std::adjacent_find(r.begin(), r.end()) != r.end())
      return "roster of school " + inst.school_ids[s] + " is not a sorted set";
    if (static_cast<int>(r.size()) > inst.capacity[s])
      return "school " + inst.school_ids[s] + " exceeds its capacity";
    for (StudentId i : r) {
      if (i < 0 || i >= n) return "roster of school " + inst.school_ids[s] + " has unknown student";
      if (m.assignment[i] != s)
        return "student " + inst.student_ids[i] + " is on the roster of school " +
               inst.school_ids[s] + " but assigned elsewhere";
    }
  }
  for (StudentId i = 0; i < n; ++i) {
    SchoolId s = m.assignment[i];
    if (s != kUnmatched && !set_contains(m.roster[s], i))
      return "student " + inst.student_ids[i] + " assigned to school " + inst.school_ids[s] +
             " but missing from its roster";
  }
  return std::nullopt;
}

bool pareto_dominates(const PreferenceProfile& prefs, const Matching& a, const Matching& b) {
  bool strict = false;
  for (StudentId i = 0; i < static_cast<StudentId>(a.assignment.size()); ++i) {
    int ra = prefs.rank_of(i, a.assignment[i]);
    int rb = prefs.rank_of(i, b.assignment[i]);
    if (ra > rb) return false;
    if (ra < rb) strict = true;
  }
  return strict;
}

}  // namespace csm
