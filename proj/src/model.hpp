#pragma once

// Core data model for controlled school choice: students with per-school
// types, schools with capacities, strict acceptable-prefix preference lists,
// and matchings (assignment + roster views kept mutually consistent).

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace csm {

using StudentId = int;  // dense 0..n-1, assigned in sorted external-id order
using SchoolId = int;   // dense 0..m-1, assigned in sorted external-id order
using TypeId = int;     // per school; 0 is the outside option's type, students use 1..K

constexpr StudentId kNoStudent = -1;  // the outside option in priority comparisons
constexpr SchoolId kUnmatched = -1;

// A set of students, kept sorted ascending and duplicate-free.
using StudentSet = std::vector<StudentId>;

bool set_contains(const StudentSet& set, StudentId i);
StudentSet set_with(const StudentSet& set, StudentId i);
StudentSet set_without(const StudentSet& set, StudentId i);
StudentSet sorted_set(StudentSet unsorted);
std::string set_to_string(const StudentSet& set);

// Enumerates all subsets of {0..n-1} with size <= max_size (n choose <=k order:
// by size, then lexicographic).
std::vector<StudentSet> subsets_up_to(int n, int max_size);

struct Instance {
  std::vector<std::string> student_ids;               // [student] external id
  std::vector<std::string> school_ids;                // [school] external id
  std::vector<int> capacity;                          // [school]
  std::vector<std::vector<TypeId>> type_of;           // [school][student], values 1..K_s
  std::vector<std::vector<std::string>> type_labels;  // [school][type], [0] = outside option

  int n_students() const { return static_cast<int>(student_ids.size()); }
  int n_schools() const { return static_cast<int>(school_ids.size()); }
  int n_types(SchoolId s) const { return static_cast<int>(type_labels[s].size()) - 1; }
};

// Strict preference list per student: the ordered prefix of acceptable
// schools. Schools not listed are strictly worse than staying unmatched.
struct PreferenceProfile {
  std::vector<std::vector<SchoolId>> ranking;

  // Position of an outcome in student i's ordering: listed schools get their
  // index, unmatched gets |list|, unlisted schools get |list|+1 (mutually
  // tied, strictly below unmatched).
  int rank_of(StudentId i, SchoolId s) const;
  bool prefers(StudentId i, SchoolId a, SchoolId b) const;  // strict
  bool acceptable(StudentId i, SchoolId s) const;
};

struct Matching {
  std::vector<SchoolId> assignment;  // [student], kUnmatched allowed
  std::vector<StudentSet> roster;    // [school], sorted

  static Matching from_assignment(const Instance& inst, std::vector<SchoolId> assignment);
  bool operator==(const Matching& other) const = default;
};

// Checks the four matching conditions: both views total and in range, the
// assignment and rosters mutually consistent, and rosters within capacity.
// Returns a description of the first violation, or nullopt if valid.
std::optional<std::string> validate_matching(const Instance& inst, const Matching& m);

// True when every student weakly prefers their seat in `a` to their seat in
// `b` and at least one strictly prefers it.
bool pareto_dominates(const PreferenceProfile& prefs, const Matching& a, const Matching& b);

}  // namespace csm
