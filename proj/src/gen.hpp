#pragma once

// Seeded random instances for tests: adjusted-scoring schools with
// controllable tie structure (fully tie-free when asked), optional preset
// bonus schedules, and random acceptable-prefix preference lists.

#include <optional>
#include <random>
#include <vector>

#include "model.hpp"
#include "priority.hpp"

namespace csm {

struct GenOptions {
  int min_students = 2;
  int max_students = 8;
  int min_schools = 1;
  int max_schools = 3;
  int max_types = 3;    // at most 6 (type labels run A..F)
  int min_capacity = 1;
  int max_capacity = 4;
  bool distinct_scores = false;  // distinct sigma on a fine grid
  // Guarantee strict comparisons everywhere: distinct scores on a 1/1024
  // grid, even integer bonus tables, and floors no score can hit.
  bool force_linear = false;
  bool allow_sqrt = false;  // let types use the diminishing sqrt bonus (inexact)
  std::optional<PresetKind> preset;  // force every school onto this preset
  double accept_prob = 0.8;          // chance each school makes a student's list
};

struct GeneratedSchool {
  std::vector<Rat> sigma;        // [student]
  std::vector<AlphaSpec> alpha;  // index 1..K
  Rat sigma_floor;
  std::optional<PresetKind> preset;
  PresetParams params;  // bounds actually used when preset is set
};

struct GeneratedInstance {
  Instance inst;
  PreferenceProfile prefs;
  std::vector<std::shared_ptr<const PriorityRule>> rules;
  std::vector<GeneratedSchool> schools;
};

GeneratedInstance random_scoring_instance(std::mt19937_64& rng, const GenOptions& opt = {});

}  // namespace csm
