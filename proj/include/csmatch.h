/* C interface to the controlled-choice matching core.
 *
 * Usage pattern: build an instance handle from a JSON document, run commands
 * against it, read each command's report as JSON, free everything. Handles
 * are opaque; all text crossing the boundary is UTF-8 JSON.
 *
 * Every command fills a report handle whenever it actually ran, even when
 * its verdict is "fail" (a failed audit is an answer, not an error). Status
 * codes mirror the CLI exit codes.
 */

#ifndef CSMATCH_H
#define CSMATCH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sm_status {
  SM_OK = 0,           /* command ran and its verdict passed */
  SM_VERDICT_FAIL = 1, /* command ran; the report's verdict is "fail" */
  SM_BAD_INPUT = 2,    /* unparseable or semantically invalid input */
  SM_INTERNAL = 3      /* a broken internal contract (a bug, not bad input) */
} sm_status;

typedef struct sm_instance sm_instance;
typedef struct sm_report sm_report;

/* Library version string, e.g. "1.0.0". Never freed by the caller. */
const char* sm_version(void);

/* Message of the most recent failure on this thread ("" when the last call
 * succeeded). Never freed by the caller; overwritten by the next call. */
const char* sm_last_error(void);

/* Parse an instance document (students, schools, rules, preferences).
 * On SM_OK, *out owns the handle; release it with sm_instance_free. */
sm_status sm_instance_from_json(const char* json_text, sm_instance** out);
void sm_instance_free(sm_instance* inst);

/* Canonical JSON of a parsed instance (round-trips byte-identically).
 * Returned text is released with sm_string_free. NULL on failure. */
char* sm_instance_to_json(const sm_instance* inst);

/* Run the mechanism. validate != 0 refuses rules failing the structural
 * axioms; capture_trace adds the round-by-round log; with_timings adds
 * wall-clock fields (making the output non-deterministic). */
sm_status sm_match(const sm_instance* inst, int validate, int capture_trace, int with_timings,
                   uint64_t seed, sm_report** out);

/* Audit every school's priority rule against the structural axioms. */
sm_status sm_check_rule(const sm_instance* inst, uint64_t seed, sm_report** out);

/* Stability verdict for a matching document against the instance. */
sm_status sm_verify(const sm_instance* inst, const char* matching_json, sm_report** out);

/* Exhaustive stable set plus its Pareto-undominated subset (desk scale). */
sm_status sm_enumerate_stable(const sm_instance* inst, sm_report** out);

/* Exhaustive misreport audit for coalitions up to max_group (1 or 2). */
sm_status sm_audit_sp(const sm_instance* inst, int max_group, sm_report** out);

/* Built-in pinned scenario: "example1", "example2", "example3", "appendixE". */
sm_status sm_repro(const char* name, sm_report** out);

/* Mechanism timing at the given student counts (informational). */
sm_status sm_bench(const int* sizes, size_t n_sizes, uint64_t seed, sm_report** out);

/* 1 when the report's verdict passed, 0 otherwise. */
int sm_report_verdict(const sm_report* report);

/* Report as JSON text (two-space indent, trailing newline). Release with
 * sm_string_free. NULL on allocation failure or null report. */
char* sm_report_json(const sm_report* report);

void sm_report_free(sm_report* report);
void sm_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* CSMATCH_H */
