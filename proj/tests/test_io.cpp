// JSON documents: canonical round-trips, referential-integrity diagnostics,
// matching and report serialization.

#include <string>

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "io.hpp"
#include "mechanism.hpp"

using namespace csm;

namespace {

// Minimal valid instance: two students, one scoring school.
OrderedJson base_doc() {
  return OrderedJson::parse(R"({
    "schema": "controlled-choice-instance",
    "schema_version": 1,
    "students": [
      {"id": "a", "types": {"s": "A"}, "scores": {"s": "0.5"}},
      {"id": "b", "types": {"s": "B"}, "scores": {"s": "0.25"}}
    ],
    "schools": [
      {"id": "s", "capacity": 1, "rule": {
        "kind": "adjusted_scoring",
        "sigma_floor": "-1",
        "alpha": {"A": {"table": ["0", "0"]}, "B": {"table": ["0.5", "0"]}}
      }}
    ],
    "preferences": {"a": ["s"], "b": ["s"]}
  })");
}

void expect_parse_error(const OrderedJson& doc, const std::string& fragment) {
  try {
    parse_instance_text(doc.dump());
    FAIL("expected a parse error containing: " << fragment);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CAPTURE(msg);
    CHECK(msg.find(fragment) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("demo instance: canonical serialization is a fixpoint") {
  std::string original = two_school_demo_json();
  ParsedInstance pi = parse_instance_text(original);
  std::string emitted = to_text(instance_to_json(pi));
  CHECK(emitted == original);

  // Parsing what we emit reproduces the bytes exactly.
  ParsedInstance again = parse_instance_text(emitted);
  CHECK(to_text(instance_to_json(again)) == emitted);
}

TEST_CASE("demo instance: parsed structure") {
  ParsedInstance pi = parse_instance_text(two_school_demo_json());
  CHECK(pi.inst.student_ids == std::vector<std::string>{"alice", "bob", "carol", "dan"});
  CHECK(pi.inst.school_ids == std::vector<std::string>{"north", "south"});
  CHECK(pi.inst.capacity == std::vector<int>{2, 1});
  CHECK(pi.inst.type_labels[0] == std::vector<std::string>{"@none", "A", "B"});
  CHECK(pi.inst.type_of[0] == std::vector<TypeId>{1, 1, 2, 2});
  // alice: north then south; bob: south then north.
  CHECK(pi.prefs.ranking[0] == std::vector<SchoolId>{0, 1});
  CHECK(pi.prefs.ranking[1] == std::vector<SchoolId>{1, 0});
  REQUIRE(pi.specs.size() == 2);
  CHECK(pi.specs[0].preset == PresetKind::Reserves);
  CHECK_FALSE(pi.specs[1].preset.has_value());

  // The preset school pays 2.0 while a type is under its one-seat reserve.
  auto north = std::dynamic_pointer_cast<const AdjustedScoringRule>(pi.rules[0]);
  REQUIRE(north);
  CHECK(north->alpha(1).table == std::vector<Rat>{Rat(2), Rat(0), Rat(0)});
  CHECK(north->sigma(0) == Rat(9, 10));
}

TEST_CASE("priority-table instances round-trip") {
  OrderedJson doc = OrderedJson::parse(R"({
    "schema": "controlled-choice-instance",
    "schema_version": 1,
    "students": [
      {"id": "a", "types": {"s": "A"}},
      {"id": "b", "types": {"s": "A"}}
    ],
    "schools": [
      {"id": "s", "capacity": 1, "rule": {
        "kind": "priority_table",
        "orders": [
          {"assigned": [], "classes": [["a", "b"], [null]]}
        ]
      }}
    ],
    "preferences": {"a": ["s"], "b": ["s"]}
  })");
  ParsedInstance pi = parse_instance_text(doc.dump());
  CHECK(pi.rules[0]->compare({}, 0, 1) == Rank::Tied);
  CHECK(pi.rules[0]->is_acceptable({}, 0));

  std::string emitted = to_text(instance_to_json(pi));
  ParsedInstance again = parse_instance_text(emitted);
  CHECK(to_text(instance_to_json(again)) == emitted);
  CHECK(again.inst.student_ids == pi.inst.student_ids);
  CHECK(again.rules[0]->compare({}, 0, 1) == Rank::Tied);
}

TEST_CASE("instance diagnostics name the offending entity") {
  SUBCASE("wrong schema") {
    OrderedJson doc = base_doc();
    doc["schema"] = "something-else";
    expect_parse_error(doc, "has schema 'something-else'");
  }

  SUBCASE("wrong schema version") {
    OrderedJson doc = base_doc();
    doc["schema_version"] = 2;
    expect_parse_error(doc, "schema_version");
  }

  SUBCASE("duplicate student id") {
    OrderedJson doc = base_doc();
    doc["students"][1]["id"] = "a";
    expect_parse_error(doc, "duplicate student id 'a'");
  }

  SUBCASE("types reference an unknown school") {
    OrderedJson doc = base_doc();
    doc["students"][0]["types"]["nowhere"] = "A";
    expect_parse_error(doc, "unknown id 'nowhere'");
  }

  SUBCASE("the label @none is reserved") {
    OrderedJson doc = base_doc();
    doc["students"][0]["types"]["s"] = "@none";
    expect_parse_error(doc, "reserved label '@none'");
  }

  SUBCASE("missing type for a school") {
    OrderedJson doc = base_doc();
    doc["students"][0]["types"].erase("s");
    expect_parse_error(doc, "has no type label for school 's'");
  }

  SUBCASE("missing score at a scoring school") {
    OrderedJson doc = base_doc();
    doc["students"][1].erase("scores");
    expect_parse_error(doc, "student 'b' has no score");
  }

  SUBCASE("increasing bonus table, named by school and counts") {
    OrderedJson doc = base_doc();
    doc["schools"][0]["rule"]["alpha"]["B"]["table"] = {"0", "0.5"};
    expect_parse_error(doc, "school 's'");
    expect_parse_error(doc, "increases from count 0");
  }

  SUBCASE("bonus table length must be capacity+1") {
    OrderedJson doc = base_doc();
    doc["schools"][0]["rule"]["alpha"]["B"]["table"] = {"0", "0", "0"};
    expect_parse_error(doc, "counts 0..capacity");
  }

  SUBCASE("alpha must cover every declared label") {
    OrderedJson doc = base_doc();
    doc["schools"][0]["rule"]["alpha"].erase("B");
    expect_parse_error(doc, "missing an entry for type label 'B'");
  }

  SUBCASE("preset and explicit tables are mutually exclusive") {
    OrderedJson doc = base_doc();
    doc["schools"][0]["rule"]["preset"] = "reserves";
    doc["schools"][0]["rule"]["reserve"] = {{"A", 1}, {"B", 1}};
    expect_parse_error(doc, "both a preset and explicit alpha");
  }

  SUBCASE("unknown preset") {
    OrderedJson doc = base_doc();
    doc["schools"][0]["rule"].erase("alpha");
    doc["schools"][0]["rule"].erase("sigma_floor");
    doc["schools"][0]["rule"]["preset"] = "mystery";
    expect_parse_error(doc, "unknown preset 'mystery'");
  }

  SUBCASE("capacity must be positive") {
    OrderedJson doc = base_doc();
    doc["schools"][0]["capacity"] = 0;
    expect_parse_error(doc, "capacity must be at least 1");
  }

  SUBCASE("scores must be numeric strings") {
    OrderedJson doc = base_doc();
    doc["students"][0]["scores"]["s"] = "fast";
    expect_parse_error(doc, "malformed numeric string 'fast'");
  }

  SUBCASE("preference lists reference known schools") {
    OrderedJson doc = base_doc();
    doc["preferences"]["a"] = {"s", "nowhere"};
    expect_parse_error(doc, "unknown id 'nowhere'");
  }

  SUBCASE("no school is listed twice") {
    OrderedJson doc = base_doc();
    doc["preferences"]["a"] = {"s", "s"};
    expect_parse_error(doc, "lists school 's' twice");
  }

  SUBCASE("every student needs a preference list") {
    OrderedJson doc = base_doc();
    doc["preferences"].erase("b");
    expect_parse_error(doc, "student 'b' has no preference list");
  }

  SUBCASE("a priority table must cover every assigned set") {
    OrderedJson doc = OrderedJson::parse(R"({
      "schema": "controlled-choice-instance",
      "schema_version": 1,
      "students": [
        {"id": "a", "types": {"s": "A"}},
        {"id": "b", "types": {"s": "A"}},
        {"id": "c", "types": {"s": "A"}}
      ],
      "schools": [
        {"id": "s", "capacity": 2, "rule": {
          "kind": "priority_table",
          "orders": [
            {"assigned": [], "classes": [["a"], ["b"], ["c"], [null]]},
            {"assigned": ["a"], "classes": [["b"], ["c"], [null]]}
          ]
        }}
      ],
      "preferences": {"a": ["s"], "b": ["s"], "c": ["s"]}
    })");
    expect_parse_error(doc, "missing assigned sets");
    expect_parse_error(doc, "{b}");
  }

  SUBCASE("raw JSON syntax errors are labelled") {
    CHECK_THROWS_WITH_AS(parse_instance_text("{not json"),
                         doctest::Contains("syntax error"), ParseError);
  }
}

TEST_CASE("matching documents round-trip and validate") {
  ParsedInstance pi = parse_instance_text(two_school_demo_json());
  Matching m = phi_bar(pi.inst, pi.prefs, pi.rules).matching;

  std::string text = to_text(matching_to_json(pi.inst, m));
  Matching back = parse_matching_text(pi.inst, text);
  CHECK(back == m);

  SUBCASE("unknown student") {
    OrderedJson doc = matching_to_json(pi.inst, m);
    doc["assignment"]["zoe"] = "north";
    CHECK_THROWS_WITH_AS(parse_matching_text(pi.inst, doc.dump()),
                         doctest::Contains("unknown student 'zoe'"), ParseError);
  }

  SUBCASE("missing student") {
    OrderedJson doc = matching_to_json(pi.inst, m);
    doc["assignment"].erase("alice");
    CHECK_THROWS_WITH_AS(parse_matching_text(pi.inst, doc.dump()),
                         doctest::Contains("says nothing about student 'alice'"), ParseError);
  }

  SUBCASE("unknown school") {
    OrderedJson doc = matching_to_json(pi.inst, m);
    doc["assignment"]["alice"] = "nowhere";
    CHECK_THROWS_WITH_AS(parse_matching_text(pi.inst, doc.dump()),
                         doctest::Contains("unknown school 'nowhere'"), ParseError);
  }

  SUBCASE("capacity violations are not matchings") {
    OrderedJson doc = matching_to_json(pi.inst, m);
    // south has one seat; give it three students.
    doc["assignment"]["alice"] = "south";
    doc["assignment"]["bob"] = "south";
    doc["assignment"]["carol"] = "south";
    CHECK_THROWS_WITH_AS(parse_matching_text(pi.inst, doc.dump()),
                         doctest::Contains("not a matching"), ParseError);
  }
}

TEST_CASE("report documents round-trip") {
  ReportDocument doc;
  doc.command = "match";
  doc.seed = 42;
  doc.summary = "matched 3 of 4 students in 7 rounds";
  doc.verdict_pass = false;
  doc.sections["anything"] = OrderedJson::array({1, 2, 3});

  OrderedJson j = report_to_json(doc);
  CHECK(j["schema"] == kReportSchema);
  CHECK(j["verdict"] == "fail");

  ReportDocument back = report_from_json(j);
  CHECK(back.command == doc.command);
  CHECK(back.seed == doc.seed);
  CHECK(back.summary == doc.summary);
  CHECK(back.verdict_pass == doc.verdict_pass);
  CHECK(back.sections == doc.sections);

  // Canonical text ends with a newline and uses two-space indentation.
  std::string text = to_text(j);
  REQUIRE_FALSE(text.empty());
  CHECK(text.back() == '\n');
  CHECK(text.find("  \"schema\"") != std::string::npos);
}

TEST_CASE("unreadable files raise parse errors") {
  CHECK_THROWS_WITH_AS(parse_instance_file("/nonexistent/nope.json"),
                       doctest::Contains("cannot read instance file"), ParseError);
}
