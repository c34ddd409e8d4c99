#pragma once

// Command implementations behind the CLI and the C API. Every command
// returns a ReportDocument; the caller serializes it. Commands throw
// ParseError/PreconditionError for faulty input and InternalError for broken
// invariants; a false verdict (a failed audit, an unstable matching) is a
// regular report, not an exception.

#include <cstdint>
#include <string>
#include <vector>

#include "io.hpp"
#include "model.hpp"

namespace csm {

struct MatchOptions {
  bool validate = true;  // refuse priority rules that fail the structural axioms
  bool trace = false;    // include the round-by-round application log
  bool timings = false;  // include wall-clock timings (non-deterministic output)
  std::uint64_t seed = 1;  // seeds the sampled axiom audit on large rules
};

// Run the mechanism on a parsed instance and verify its own output.
ReportDocument cmd_match(const ParsedInstance& pi, const MatchOptions& opt = {});

// Audit every school's priority rule against the structural axioms plus the
// cross-assignment transitivity and nonempty-lowest-set consequences.
ReportDocument cmd_check_rule(const ParsedInstance& pi, std::uint64_t seed);

// Stability verdict for a user-supplied matching.
ReportDocument cmd_verify(const ParsedInstance& pi, const Matching& m);

// Exhaustive stable set plus its Pareto-undominated subset (desk scale).
ReportDocument cmd_enumerate_stable(const ParsedInstance& pi);

// Exhaustive misreport audit (unilateral, then groups up to max_group).
ReportDocument cmd_audit_sp(const ParsedInstance& pi, int max_group);

// Built-in scenarios with pinned outcomes: example1 (empty stable set),
// example2 (stable but Pareto-dominated outcome), example3 (square-root
// bonus tracks the subset-valuation optimum), appendixE (no slot-priority
// pair reproduces the valuation choices).
ReportDocument cmd_repro(const std::string& name);

// Mechanism timing at growing student counts against a quartic growth
// envelope; informational (the verdict never fails on timing).
ReportDocument cmd_bench(const std::vector<int>& sizes, std::uint64_t seed);

// Progress notes go to stderr when CSMATCH_VERBOSE is set, keeping stdout
// byte-deterministic either way.
bool verbose_logging();
void log_progress(const std::string& line);

}  // namespace csm
