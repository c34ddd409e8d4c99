#include "fixtures.hpp"

#include <utility>

namespace csm {

namespace {

constexpr StudentId kNone = kNoStudent;

Instance make_instance(std::vector<std::string> student_ids, std::vector<std::string> school_ids,
                       std::vector<int> capacity, std::vector<std::vector<TypeId>> type_of,
                       std::vector<std::vector<std::string>> type_labels) {
  Instance inst;
  inst.student_ids = std::move(student_ids);
  inst.school_ids = std::move(school_ids);
  inst.capacity = std::move(capacity);
  inst.type_of = std::move(type_of);
  inst.type_labels = std::move(type_labels);
  return inst;
}

std::shared_ptr<const TablePriorityRule> make_table(int n, int capacity,
                                                    std::vector<TypeId> type_of,
                                                    std::vector<StoredOrder> orders) {
  return std::make_shared<TablePriorityRule>(n, capacity, std::move(type_of), orders);
}

}  // namespace

Scenario no_stable_scenario() {
  Scenario sc;
  sc.inst = make_instance({"1", "2", "3"}, {"s"}, {2}, {{1, 1, 2}}, {{"@none", "A", "B"}});
  // At the empty seat set: 1 > 2 > 3 > @none. With one seat taken the order
  // rotates: seat 1 -> 2 > 3, seat 2 -> 3 > 1, seat 3 -> 1 > 2, so whichever
  // pair is seated, the rejected student outranks one of them.
  std::vector<StoredOrder> orders = {
      {{}, {{0}, {1}, {2}, {kNone}}},
      {{0}, {{1}, {2}, {kNone}}},
      {{1}, {{2}, {0}, {kNone}}},
      {{2}, {{0}, {1}, {kNone}}},
  };
  sc.rules.push_back(make_table(3, 2, sc.inst.type_of[0], std::move(orders)));
  sc.prefs.ranking = {{0}, {0}, {0}};
  return sc;
}

Scenario tie_dominated_scenario() {
  Scenario sc;
  sc.inst = make_instance({"1", "2", "3", "4"}, {"5", "6"}, {2, 1},
                          {{1, 1, 2, 2}, {1, 1, 2, 2}},
                          {{"@none", "A", "B"}, {"@none", "A", "B"}});
  // School 5, two seats. The order with student 3 seated ties 1 with 4.
  std::vector<StoredOrder> school5 = {
      {{}, {{2}, {3}, {1}, {0}, {kNone}}},
      {{0}, {{2}, {3}, {1}, {kNone}}},
      {{1}, {{2}, {3}, {0}, {kNone}}},
      {{2}, {{1}, {0, 3}, {kNone}}},
      {{3}, {{1}, {2}, {0}, {kNone}}},
  };
  // School 6, one seat: 4 > 3 > 2 > 1 > @none.
  std::vector<StoredOrder> school6 = {
      {{}, {{3}, {2}, {1}, {0}, {kNone}}},
  };
  sc.rules.push_back(make_table(4, 2, sc.inst.type_of[0], std::move(school5)));
  sc.rules.push_back(make_table(4, 1, sc.inst.type_of[1], std::move(school6)));
  // Students 1 and 2 rank school 6 first; students 3 and 4 rank school 5
  // first.
  sc.prefs.ranking = {{1, 0}, {1, 0}, {0, 1}, {0, 1}};
  return sc;
}

Scenario sqrt_bonus_scenario(const Rat& sigma6) {
  Scenario sc;
  sc.inst = make_instance({"1", "2", "3", "4", "5", "6"}, {"s"}, {5},
                          {{1, 1, 1, 1, 2, 2}}, {{"@none", "A", "B"}});
  std::vector<Rat> sigma = {Rat(4, 5), Rat(4, 5), Rat(7, 10), Rat(3, 5), Rat(1, 2), sigma6};
  std::vector<AlphaSpec> alpha(3);
  alpha[1].table.assign(6, Rat(0));  // type A: no bonus at any count
  alpha[2].sqrt_gap = true;          // type B: (sqrt(x+1) - sqrt(x)) / 2
  alpha[2].weight = Rat(1, 2);
  sc.rules.push_back(std::make_shared<AdjustedScoringRule>(
      6, 5, sc.inst.type_of[0], std::move(sigma), Rat(-1), std::move(alpha)));
  sc.prefs.ranking.assign(6, {0});
  return sc;
}

ChoiceScenario tie_counterexample() {
  ChoiceScenario sc;
  sc.inst = make_instance({"1", "2"}, {"s"}, {1}, {{1, 1}}, {{"@none", "A"}});
  sc.rule = make_table(2, 1, sc.inst.type_of[0], {{{}, {{0, 1}, {kNone}}}});
  // The table resolves the 1 ~ 2 tie toward student 2 whenever both apply.
  std::map<StudentSet, StudentSet> table = {
      {{}, {}},
      {{0}, {0}},
      {{1}, {1}},
      {{0, 1}, {1}},
  };
  sc.choice = std::make_shared<ExplicitChoice>(2, 1, std::move(table));
  sc.prefs.ranking = {{0}, {0}};
  return sc;
}

ChoiceScenario nonsubstitutable_counterexample() {
  ChoiceScenario sc;
  sc.inst =
      make_instance({"1", "2", "3"}, {"s"}, {1}, {{1, 2, 3}}, {{"@none", "A", "B", "C"}});
  sc.rule = make_table(3, 1, sc.inst.type_of[0], {{{}, {{0, 1}, {2}, {kNone}}}});
  // Prefer 2 whenever 3 also applies, and 1 from any other pair: each value
  // respects the priorities (1 ~ 2 > 3), yet 2 is chosen from {1,2,3} and
  // dropped from {1,2}.
  std::map<StudentSet, StudentSet> table = {
      {{}, {}},        {{0}, {0}},      {{1}, {1}},      {{2}, {2}},
      {{0, 1}, {0}},   {{0, 2}, {0}},   {{1, 2}, {1}},   {{0, 1, 2}, {1}},
  };
  sc.choice = std::make_shared<ExplicitChoice>(3, 1, std::move(table));
  sc.prefs.ranking = {{0}, {0}, {0}};
  return sc;
}

BrokenChoiceScenario sp_broken_scenario() {
  BrokenChoiceScenario sc;
  sc.inst = make_instance({"1", "2", "3", "4"}, {"s", "z"}, {2, 1},
                          {{1, 1, 1, 1}, {1, 1, 1, 1}},
                          {{"@none", "A"}, {"@none", "A"}});
  // School s: student 1 loses the two-applicant contest against 2 yet wins a
  // seat once 3 applies as well — a substitutability failure. Student 4 is
  // never chosen here.
  std::map<StudentSet, StudentSet> s_table = {
      {{}, {}},          {{0}, {0}},         {{1}, {1}},        {{2}, {2}},
      {{3}, {}},         {{0, 1}, {1}},      {{0, 2}, {0, 2}},  {{0, 3}, {0}},
      {{1, 2}, {1, 2}},  {{1, 3}, {1}},      {{2, 3}, {2}},     {{0, 1, 2}, {0, 2}},
      {{0, 1, 3}, {1}},  {{0, 2, 3}, {0, 2}}, {{1, 2, 3}, {1, 2}}, {{0, 1, 2, 3}, {0, 2}},
  };
  sc.choices.push_back(std::make_shared<ExplicitChoice>(4, 2, std::move(s_table)));
  // School z: one seat, 4 > 1 > 2 > 3 > @none.
  auto z_rule = make_table(4, 1, sc.inst.type_of[1], {{{}, {{3}, {0}, {1}, {2}, {kNone}}}});
  sc.choices.push_back(std::make_shared<DerivedChoice>(z_rule));
  sc.prefs.ranking = {{0}, {0}, {0}, {1}};
  return sc;
}

std::vector<double> ValuationScenario::scores() const {
  std::vector<double> out;
  out.reserve(sigma.size());
  for (const Rat& r : sigma) out.push_back(r.to_double());
  return out;
}

ValuationScenario slot_defeating_scenario() {
  ValuationScenario sc;
  sc.type_of = {1, 1, 1, 2, 2, 2};
  sc.sigma = {Rat(1), Rat(1), Rat(9, 20), Rat(1), Rat(1), Rat(1, 5)};
  sc.capacity = 2;
  sc.bonus_type = 2;
  sc.coeff = 0.5;
  sc.cases = {
      {{0, 2, 5}, {0, 5}}, {{2, 3, 5}, {2, 3}}, {{2, 4, 5}, {2, 4}},
      {{2, 3, 4}, {3, 4}}, {{1, 2, 5}, {1, 5}}, {{0, 1, 5}, {0, 1}},
  };
  return sc;
}

std::string two_school_demo_json() {
  return R"({
  "schema": "controlled-choice-instance",
  "schema_version": 1,
  "students": [
    {
      "id": "alice",
      "types": {
        "north": "A",
        "south": "A"
      },
      "scores": {
        "north": "0.9",
        "south": "0.3"
      }
    },
    {
      "id": "bob",
      "types": {
        "north": "A",
        "south": "A"
      },
      "scores": {
        "north": "0.55",
        "south": "0.95"
      }
    },
    {
      "id": "carol",
      "types": {
        "north": "B",
        "south": "B"
      },
      "scores": {
        "north": "0.8",
        "south": "0.7"
      }
    },
    {
      "id": "dan",
      "types": {
        "north": "B",
        "south": "B"
      },
      "scores": {
        "north": "0.35",
        "south": "0.6"
      }
    }
  ],
  "schools": [
    {
      "id": "north",
      "capacity": 2,
      "rule": {
        "kind": "adjusted_scoring",
        "preset": "reserves",
        "reserve": {
          "A": 1,
          "B": 1
        }
      }
    },
    {
      "id": "south",
      "capacity": 1,
      "rule": {
        "kind": "adjusted_scoring",
        "sigma_floor": "-1",
        "alpha": {
          "A": {
            "table": [
              "0",
              "0"
            ]
          },
          "B": {
            "table": [
              "0.5",
              "0"
            ]
          }
        }
      }
    }
  ],
  "preferences": {
    "alice": [
      "north",
      "south"
    ],
    "bob": [
      "south",
      "north"
    ],
    "carol": [
      "north",
      "south"
    ],
    "dan": [
      "south",
      "north"
    ]
  }
})"
         "\n";
}

}  // namespace csm
