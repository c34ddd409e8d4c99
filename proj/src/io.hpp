#pragma once

// JSON documents: instances (students with per-school types and scores,
// schools with capacities and rule specs, preference lists), matchings, and
// command reports. Every document carries a schema name and version; parsing
// distinguishes syntax errors (position-annotated) from semantic errors
// (named invariant plus the offending id). Serialization is canonical, so
// parse(emit(x)) == x and byte output is deterministic.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "model.hpp"
#include "priority.hpp"
#include "rational.hpp"

namespace csm {

using OrderedJson = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kInstanceSchema = "controlled-choice-instance";
inline constexpr const char* kMatchingSchema = "controlled-choice-matching";
inline constexpr const char* kReportSchema = "controlled-choice-report";

// One school's rule as written in the document (kept for faithful
// re-serialization alongside the constructed rule object).
struct RuleSpec {
  enum class Kind { AdjustedScoring, PriorityTable };
  Kind kind = Kind::AdjustedScoring;

  // Adjusted scoring (students in dense order).
  std::vector<Rat> sigma;
  Rat sigma_floor;
  std::vector<AlphaSpec> alpha;  // index 1..K
  std::optional<PresetKind> preset;
  PresetParams params;  // bounds as written, preset form only

  // Explicit priority table.
  std::vector<StoredOrder> orders;
};

struct ParsedInstance {
  Instance inst;
  PreferenceProfile prefs;
  std::vector<RuleSpec> specs;                              // [school]
  std::vector<std::shared_ptr<const PriorityRule>> rules;   // [school]
};

ParsedInstance parse_instance_text(const std::string& text);
ParsedInstance parse_instance_file(const std::string& path);
OrderedJson instance_to_json(const ParsedInstance& pi);

Matching parse_matching_text(const Instance& inst, const std::string& text);
Matching parse_matching_file(const Instance& inst, const std::string& path);
OrderedJson matching_to_json(const Instance& inst, const Matching& m);

struct ReportDocument {
  std::string command;
  std::uint64_t seed = 0;
  std::string summary;
  bool verdict_pass = true;
  OrderedJson sections = OrderedJson::object();
};

OrderedJson report_to_json(const ReportDocument& report);
ReportDocument report_from_json(const OrderedJson& doc);

// Canonical on-disk rendering: two-space indent plus trailing newline.
std::string to_text(const OrderedJson& doc);

}  // namespace csm
