#pragma once

// Student-proposing deferred acceptance over per-school choice functions.
//
// Each round one unmatched student with untried acceptable schools proposes
// to their most-preferred school that has not rejected them; the school pools
// the proposer with its current holds and re-chooses; everybody dropped is
// rejected for good. The loop ends when no student can propose, and the held
// sets become the matching.
//
// `spda` runs over arbitrary choice functions; `phi_bar` is the named
// mechanism that derives each school's choice function from its priority
// rule first.

#include <memory>
#include <vector>

#include "choice.hpp"
#include "model.hpp"
#include "priority.hpp"

namespace csm {

struct SpdaRound {
  int round = 0;
  StudentId proposer = kNoStudent;
  SchoolId school = kUnmatched;
  StudentSet pool;      // holds plus the proposer, as handed to the choice function
  StudentSet held;      // what the school keeps
  StudentSet rejected;  // pool minus held
};

struct SpdaTrace {
  bool captured = false;
  std::vector<SpdaRound> rounds;  // filled only when captured
  int total_rounds = 0;           // counted either way
};

struct SpdaOptions {
  bool capture_trace = false;
  // Permutation of student ids used to pick the proposer among eligible
  // students each round (earlier in the list proposes first). Empty means
  // ascending id. The matching must not depend on this; tests vary it.
  std::vector<StudentId> proposer_priority;
};

struct SpdaResult {
  Matching matching;
  SpdaTrace trace;
};

// Deferred acceptance over explicit choice functions, one per school
// (choices[s] must cover all students and match school s's capacity).
SpdaResult spda(const Instance& inst, const PreferenceProfile& prefs,
                const std::vector<const ChoiceFunction*>& choices, const SpdaOptions& opt = {});

// The full mechanism: derive each school's choice function from its priority
// rule, then run deferred acceptance.
SpdaResult phi_bar(const Instance& inst, const PreferenceProfile& prefs,
                   const std::vector<std::shared_ptr<const PriorityRule>>& rules,
                   const SpdaOptions& opt = {});

}  // namespace csm
