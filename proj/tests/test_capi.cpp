// Exercises the shared-library C interface the way an external caller would:
// only csmatch.h, opaque handles, status codes, and JSON strings.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "csmatch.h"
#include "doctest.h"
#include "json.hpp"

namespace {

const char* kInstance = R"({
  "schema": "controlled-choice-instance",
  "schema_version": 1,
  "students": [
    {"id": "ada", "types": {"u": "A"}, "scores": {"u": "0.9"}},
    {"id": "ben", "types": {"u": "A"}, "scores": {"u": "0.6"}},
    {"id": "cyd", "types": {"u": "B"}, "scores": {"u": "0.3"}}
  ],
  "schools": [
    {"id": "u", "capacity": 2, "rule": {
      "kind": "adjusted_scoring",
      "preset": "reserves",
      "reserve": {"A": 1, "B": 1}
    }}
  ],
  "preferences": {"ada": ["u"], "ben": ["u"], "cyd": ["u"]}
})";

std::string report_json(sm_report* report) {
  char* raw = sm_report_json(report);
  REQUIRE(raw != nullptr);
  std::string out(raw);
  sm_string_free(raw);
  return out;
}

}  // namespace

TEST_CASE("version string is present") {
  const char* v = sm_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("instances parse, serialize, and free") {
  sm_instance* inst = nullptr;
  REQUIRE(sm_instance_from_json(kInstance, &inst) == SM_OK);
  REQUIRE(inst != nullptr);
  CHECK(std::string(sm_last_error()).empty());

  char* emitted = sm_instance_to_json(inst);
  REQUIRE(emitted != nullptr);
  // Round-trip: the emitted canonical text parses to the same bytes.
  sm_instance* again = nullptr;
  REQUIRE(sm_instance_from_json(emitted, &again) == SM_OK);
  char* emitted2 = sm_instance_to_json(again);
  CHECK(std::string(emitted) == std::string(emitted2));
  sm_string_free(emitted);
  sm_string_free(emitted2);
  sm_instance_free(again);
  sm_instance_free(inst);
}

TEST_CASE("bad input yields SM_BAD_INPUT and a diagnostic") {
  sm_instance* inst = nullptr;
  CHECK(sm_instance_from_json("{broken", &inst) == SM_BAD_INPUT);
  CHECK(inst == nullptr);
  CHECK_FALSE(std::string(sm_last_error()).empty());

  // Semantic errors too (capacity zero).
  std::string doc = kInstance;
  doc.replace(doc.find("\"capacity\": 2"), 13, "\"capacity\": 0");
  CHECK(sm_instance_from_json(doc.c_str(), &inst) == SM_BAD_INPUT);
  CHECK(inst == nullptr);
  CHECK(std::string(sm_last_error()).find("capacity") != std::string::npos);

  // Null arguments are rejected, not crashed on.
  CHECK(sm_instance_from_json(nullptr, &inst) == SM_BAD_INPUT);
  CHECK(sm_instance_from_json(kInstance, nullptr) == SM_BAD_INPUT);
}

TEST_CASE("match produces a passing report with the expected seats") {
  sm_instance* inst = nullptr;
  REQUIRE(sm_instance_from_json(kInstance, &inst) == SM_OK);

  sm_report* report = nullptr;
  REQUIRE(sm_match(inst, 1, 0, 0, 1, &report) == SM_OK);
  REQUIRE(report != nullptr);
  CHECK(sm_report_verdict(report) == 1);

  auto doc = nlohmann::json::parse(report_json(report));
  CHECK(doc["schema"] == "controlled-choice-report");
  CHECK(doc["command"] == "match");
  CHECK(doc["verdict"] == "pass");
  // ada takes the open seat on score, cyd the type-B reserved seat.
  CHECK(doc["sections"]["matching"]["assignment"]["ada"] == "u");
  CHECK(doc["sections"]["matching"]["assignment"]["ben"].is_null());
  CHECK(doc["sections"]["matching"]["assignment"]["cyd"] == "u");
  CHECK(doc["sections"]["stability"]["stable"] == true);

  sm_report_free(report);
  sm_instance_free(inst);
}

TEST_CASE("verify judges a provided matching") {
  sm_instance* inst = nullptr;
  REQUIRE(sm_instance_from_json(kInstance, &inst) == SM_OK);

  const char* good = R"({
    "schema": "controlled-choice-matching",
    "schema_version": 1,
    "assignment": {"ada": "u", "ben": null, "cyd": "u"}
  })";
  sm_report* report = nullptr;
  REQUIRE(sm_verify(inst, good, &report) == SM_OK);
  CHECK(sm_report_verdict(report) == 1);
  sm_report_free(report);

  // Seating ben instead of cyd wastes nothing but ignores the reserve:
  // cyd has priority for the type-B seat, so the verdict fails with
  // status SM_VERDICT_FAIL while the report is still produced.
  const char* bad = R"({
    "schema": "controlled-choice-matching",
    "schema_version": 1,
    "assignment": {"ada": "u", "ben": "u", "cyd": null}
  })";
  report = nullptr;
  CHECK(sm_verify(inst, bad, &report) == SM_VERDICT_FAIL);
  REQUIRE(report != nullptr);
  CHECK(sm_report_verdict(report) == 0);
  auto doc = nlohmann::json::parse(report_json(report));
  CHECK(doc["verdict"] == "fail");
  sm_report_free(report);

  sm_instance_free(inst);
}

TEST_CASE("check-rule, enumerate, audit, and repro run through the C surface") {
  sm_instance* inst = nullptr;
  REQUIRE(sm_instance_from_json(kInstance, &inst) == SM_OK);

  sm_report* report = nullptr;
  REQUIRE(sm_check_rule(inst, 1, &report) == SM_OK);
  CHECK(sm_report_verdict(report) == 1);
  sm_report_free(report);

  report = nullptr;
  REQUIRE(sm_enumerate_stable(inst, &report) == SM_OK);
  sm_report_free(report);

  report = nullptr;
  REQUIRE(sm_audit_sp(inst, 2, &report) == SM_OK);
  CHECK(sm_report_verdict(report) == 1);
  sm_report_free(report);

  report = nullptr;
  REQUIRE(sm_repro("example2", &report) == SM_OK);
  CHECK(sm_report_verdict(report) == 1);
  sm_report_free(report);

  report = nullptr;
  CHECK(sm_repro("example9", &report) == SM_BAD_INPUT);
  CHECK(report == nullptr);
  CHECK_FALSE(std::string(sm_last_error()).empty());

  sm_instance_free(inst);
}
