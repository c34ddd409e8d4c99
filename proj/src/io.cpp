#include "io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace csm {

namespace {

// ---------------------------------------------------------------------------
// Low-level access with error context.

const OrderedJson& field(const OrderedJson& obj, const std::string& key,
                         const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + " is missing required field '" + key + "'");
  return *it;
}

std::string as_string(const OrderedJson& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + " must be a string");
  return v.get<std::string>();
}

int as_int(const OrderedJson& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + " must be an integer");
  return v.get<int>();
}

Rat as_rat(const OrderedJson& v, const std::string& where) {
  if (!v.is_string())
    throw ParseError(where + " must be a numeric string such as \"0.5\" or \"1/3\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

void check_schema(const OrderedJson& doc, const char* schema, const std::string& what) {
  if (!doc.is_object()) throw ParseError(what + " document must be a JSON object");
  std::string found = as_string(field(doc, "schema", what + " document"), "schema");
  if (found != schema)
    throw ParseError(what + " document has schema '" + found + "', expected '" + schema + "'");
  int version = as_int(field(doc, "schema_version", what + " document"), "schema_version");
  if (version != kSchemaVersion)
    throw ParseError(what + " document has schema_version " + std::to_string(version) +
                     ", this build reads version " + std::to_string(kSchemaVersion));
}

// ---------------------------------------------------------------------------
// External-id bookkeeping.

struct IdMap {
  std::vector<std::string> ids;       // dense -> external, sorted
  std::map<std::string, int> index;   // external -> dense

  int size() const { return static_cast<int>(ids.size()); }
  int at(const std::string& ext, const std::string& who) const {
    auto it = index.find(ext);
    if (it == index.end()) throw ParseError(who + " references unknown id '" + ext + "'");
    return it->second;
  }
};

IdMap build_id_map(std::vector<std::string> ids, const std::string& what) {
  std::sort(ids.begin(), ids.end());
  for (std::size_t k = 1; k < ids.size(); ++k)
    if (ids[k] == ids[k - 1]) throw ParseError("duplicate " + what + " id '" + ids[k] + "'");
  IdMap map;
  map.ids = std::move(ids);
  for (int k = 0; k < map.size(); ++k) map.index[map.ids[k]] = k;
  return map;
}

// ---------------------------------------------------------------------------
// Rule parsing.

std::vector<int> int_bounds_by_label(const OrderedJson& obj,
                                     const std::map<std::string, TypeId>& label_of,
                                     const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must map type labels to integers");
  std::vector<int> out(label_of.size() + 1, 0);
  for (const auto& [label, value] : obj.items()) {
    auto it = label_of.find(label);
    if (it == label_of.end())
      throw ParseError(where + " names unknown type label '" + label + "'");
    out[it->second] = as_int(value, where + " entry '" + label + "'");
  }
  for (const auto& [label, t] : label_of)
    if (!obj.contains(label))
      throw ParseError(where + " is missing an entry for type label '" + label + "'");
  return out;
}

std::vector<Rat> rat_bounds_by_label(const OrderedJson& obj,
                                     const std::map<std::string, TypeId>& label_of,
                                     const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must map type labels to numeric strings");
  std::vector<Rat> out(label_of.size() + 1, Rat(0));
  for (const auto& [label, value] : obj.items()) {
    auto it = label_of.find(label);
    if (it == label_of.end())
      throw ParseError(where + " names unknown type label '" + label + "'");
    out[it->second] = as_rat(value, where + " entry '" + label + "'");
  }
  for (const auto& [label, t] : label_of)
    if (!obj.contains(label))
      throw ParseError(where + " is missing an entry for type label '" + label + "'");
  return out;
}

RuleSpec parse_adjusted_rule(const OrderedJson& rule, const std::string& where, int capacity,
                             const std::map<std::string, TypeId>& label_of,
                             const std::vector<std::string>& labels_in_order) {
  RuleSpec spec;
  spec.kind = RuleSpec::Kind::AdjustedScoring;
  const int n_types = static_cast<int>(label_of.size());

  if (rule.contains("preset")) {
    if (rule.contains("alpha"))
      throw ParseError(where + " gives both a preset and explicit alpha tables; pick one");
    std::string name = as_string(rule["preset"], where + " preset");
    auto kind = preset_kind_from_string(name);
    if (!kind) throw ParseError(where + " names unknown preset '" + name + "'");
    spec.preset = *kind;

    switch (*kind) {
      case PresetKind::LinearDecay:
      case PresetKind::Reserves:
      case PresetKind::Quotas:
        spec.params.reserve = int_bounds_by_label(field(rule, "reserve", where), label_of,
                                                  where + " reserve");
        break;
      case PresetKind::SoftBounds:
      case PresetKind::ReservesAndQuotas:
        spec.params.reserve = int_bounds_by_label(field(rule, "reserve", where), label_of,
                                                  where + " reserve");
        spec.params.quota =
            int_bounds_by_label(field(rule, "quota", where), label_of, where + " quota");
        break;
      case PresetKind::FlatBonus:
        spec.params.bonus =
            rat_bounds_by_label(field(rule, "bonus", where), label_of, where + " bonus");
        break;
      case PresetKind::DiminishingSqrt:
        spec.params.weight =
            rat_bounds_by_label(field(rule, "weight", where), label_of, where + " weight");
        break;
    }
    if (rule.contains("sigma_floor"))
      spec.params.sigma_floor = as_rat(rule["sigma_floor"], where + " sigma_floor");

    PresetResult preset;
    try {
      preset = preset_alpha(*kind, capacity, n_types, spec.params);
    } catch (const PreconditionError& e) {
      throw ParseError(where + ": " + e.what());
    }
    spec.alpha = std::move(preset.alpha);
    spec.sigma_floor = preset.sigma_floor;
    return spec;
  }

  spec.sigma_floor = as_rat(field(rule, "sigma_floor", where), where + " sigma_floor");
  const OrderedJson& alpha = field(rule, "alpha", where);
  if (!alpha.is_object()) throw ParseError(where + " alpha must map type labels to bonus specs");
  spec.alpha.assign(n_types + 1, {});
  for (const auto& [label, body] : alpha.items()) {
    auto it = label_of.find(label);
    if (it == label_of.end())
      throw ParseError(where + " alpha names unknown type label '" + label + "'");
    const std::string entry = where + " alpha entry '" + label + "'";
    AlphaSpec& slot = spec.alpha[it->second];
    if (body.contains("sqrt_weight")) {
      if (body.contains("table")) throw ParseError(entry + " gives both a table and sqrt_weight");
      slot.sqrt_gap = true;
      slot.weight = as_rat(body["sqrt_weight"], entry + " sqrt_weight");
      continue;
    }
    const OrderedJson& table = field(body, "table", entry);
    if (!table.is_array()) throw ParseError(entry + " table must be an array of numeric strings");
    if (static_cast<int>(table.size()) != capacity + 1)
      throw ParseError(entry + " table must hold counts 0..capacity (" +
                       std::to_string(capacity + 1) + " entries), got " +
                       std::to_string(table.size()));
    for (const auto& v : table)
      slot.table.push_back(as_rat(v, entry + " table value"));
    for (std::size_t x = 1; x < slot.table.size(); ++x)
      if (slot.table[x] > slot.table[x - 1])
        throw ParseError(entry + " increases from count " + std::to_string(x - 1) + " (" +
                         to_string(slot.table[x - 1]) + ") to count " + std::to_string(x) + " (" +
                         to_string(slot.table[x]) + "); bonus tables must be non-increasing");
  }
  for (const std::string& label : labels_in_order)
    if (!alpha.contains(label))
      throw ParseError(where + " alpha is missing an entry for type label '" + label + "'");
  return spec;
}

RuleSpec parse_table_rule(const OrderedJson& rule, const std::string& where, const IdMap& students) {
  RuleSpec spec;
  spec.kind = RuleSpec::Kind::PriorityTable;
  const OrderedJson& orders = field(rule, "orders", where);
  if (!orders.is_array()) throw ParseError(where + " orders must be an array");
  for (const OrderedJson& entry : orders) {
    StoredOrder stored;
    const OrderedJson& assigned = field(entry, "assigned", where + " order entry");
    if (!assigned.is_array()) throw ParseError(where + " assigned must be an array of ids");
    for (const auto& v : assigned)
      stored.assigned.push_back(
          students.at(as_string(v, where + " assigned id"), where + " assigned set"));
    std::sort(stored.assigned.begin(), stored.assigned.end());
    const OrderedJson& classes = field(entry, "classes", where + " order entry");
    if (!classes.is_array()) throw ParseError(where + " classes must be an array of arrays");
    for (const auto& cls : classes) {
      if (!cls.is_array()) throw ParseError(where + " classes must be an array of arrays");
      std::vector<StudentId> members;
      for (const auto& v : cls) {
        if (v.is_null())
          members.push_back(kNoStudent);
        else
          members.push_back(
              students.at(as_string(v, where + " class member"), where + " priority class"));
      }
      stored.classes.push_back(std::move(members));
    }
    spec.orders.push_back(std::move(stored));
  }
  return spec;
}

std::string label_set_to_string(const std::vector<StudentSet>& sets,
                                const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t k = 0; k < sets.size() && k < 4; ++k) {
    if (k) out += ", ";
    out += "{";
    for (std::size_t j = 0; j < sets[k].size(); ++j) {
      if (j) out += ",";
      out += ids[sets[k][j]];
    }
    out += "}";
  }
  if (sets.size() > 4) out += ", ...";
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Instance documents.

ParsedInstance parse_instance_text(const std::string& text) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  check_schema(doc, kInstanceSchema, "instance");

  const OrderedJson& students = field(doc, "students", "instance");
  const OrderedJson& schools = field(doc, "schools", "instance");
  const OrderedJson& preferences = field(doc, "preferences", "instance");
  if (!students.is_array()) throw ParseError("'students' must be an array");
  if (!schools.is_array()) throw ParseError("'schools' must be an array");
  if (!preferences.is_object()) throw ParseError("'preferences' must be an object");

  std::vector<std::string> student_ids, school_ids;
  for (const auto& st : students)
    student_ids.push_back(as_string(field(st, "id", "student entry"), "student id"));
  for (const auto& sc : schools)
    school_ids.push_back(as_string(field(sc, "id", "school entry"), "school id"));
  IdMap smap = build_id_map(student_ids, "student");
  IdMap cmap = build_id_map(school_ids, "school");
  const int n = smap.size();
  const int m = cmap.size();

  std::vector<const OrderedJson*> student_json(n, nullptr), school_json(m, nullptr);
  for (const auto& st : students)
    student_json[smap.at(st["id"].get<std::string>(), "student entry")] = &st;
  for (const auto& sc : schools)
    school_json[cmap.at(sc["id"].get<std::string>(), "school entry")] = &sc;

  ParsedInstance pi;
  pi.inst.student_ids = smap.ids;
  pi.inst.school_ids = cmap.ids;

  // Per-student raw types and scores, with referential-integrity checks.
  std::vector<std::map<std::string, std::string>> raw_types(n);   // student -> school ext -> label
  std::vector<std::map<std::string, Rat>> raw_scores(n);          // student -> school ext -> score
  for (int i = 0; i < n; ++i) {
    const std::string who = "student '" + smap.ids[i] + "'";
    const OrderedJson& types = field(*student_json[i], "types", who);
    if (!types.is_object()) throw ParseError(who + " types must map school ids to labels");
    for (const auto& [school_ext, label] : types.items()) {
      cmap.at(school_ext, who + " types");
      std::string text_label = as_string(label, who + " type label");
      if (text_label == "@none") throw ParseError(who + " uses the reserved label '@none'");
      raw_types[i][school_ext] = text_label;
    }
    if (student_json[i]->contains("scores")) {
      const OrderedJson& scores = (*student_json[i])["scores"];
      if (!scores.is_object()) throw ParseError(who + " scores must map school ids to strings");
      for (const auto& [school_ext, value] : scores.items()) {
        cmap.at(school_ext, who + " scores");
        raw_scores[i][school_ext] =
            as_rat(value, who + " score for school '" + school_ext + "'");
      }
    }
  }

  for (SchoolId s = 0; s < m; ++s) {
    const std::string school_ext = cmap.ids[s];
    const std::string where = "school '" + school_ext + "'";
    const OrderedJson& sc = *school_json[s];
    int capacity = as_int(field(sc, "capacity", where), where + " capacity");
    if (capacity < 1) throw ParseError(where + " capacity must be at least 1");
    pi.inst.capacity.push_back(capacity);

    const OrderedJson& rule = field(sc, "rule", where);
    std::string kind = as_string(field(rule, "kind", where + " rule"), where + " rule kind");

    // Type universe at this school: every label a student declares plus every
    // label the rule spec mentions, sorted.
    std::set<std::string> labels;
    for (int i = 0; i < n; ++i) {
      auto it = raw_types[i].find(school_ext);
      if (it == raw_types[i].end())
        throw ParseError("student '" + smap.ids[i] + "' has no type label for " + where);
      labels.insert(it->second);
    }
    if (kind == "adjusted_scoring") {
      for (const char* key : {"alpha", "reserve", "quota", "bonus", "weight"}) {
        if (rule.contains(key) && rule[key].is_object())
          for (const auto& [label, unused] : rule[key].items()) labels.insert(label);
      }
    }
    std::vector<std::string> type_labels = {"@none"};
    std::map<std::string, TypeId> label_of;
    for (const std::string& label : labels) {
      type_labels.push_back(label);
      label_of[label] = static_cast<TypeId>(type_labels.size()) - 1;
    }
    pi.inst.type_labels.push_back(type_labels);
    std::vector<TypeId> type_of(n);
    for (int i = 0; i < n; ++i) type_of[i] = label_of.at(raw_types[i].at(school_ext));
    pi.inst.type_of.push_back(type_of);

    std::vector<std::string> labels_in_order(type_labels.begin() + 1, type_labels.end());
    if (kind == "adjusted_scoring") {
      RuleSpec spec =
          parse_adjusted_rule(rule, where + " rule", capacity, label_of, labels_in_order);
      spec.sigma.resize(n);
      for (int i = 0; i < n; ++i) {
        auto it = raw_scores[i].find(school_ext);
        if (it == raw_scores[i].end())
          throw ParseError("student '" + smap.ids[i] + "' has no score for " + where +
                           " (its rule scores applicants)");
        spec.sigma[i] = it->second;
      }
      try {
        pi.rules.push_back(std::make_shared<AdjustedScoringRule>(
            n, capacity, type_of, spec.sigma, spec.sigma_floor, spec.alpha));
      } catch (const PreconditionError& e) {
        throw ParseError(where + ": " + e.what());
      }
      pi.specs.push_back(std::move(spec));
    } else if (kind == "priority_table") {
      RuleSpec spec = parse_table_rule(rule, where + " rule", smap);
      std::shared_ptr<const TablePriorityRule> table;
      try {
        table = std::make_shared<TablePriorityRule>(n, capacity, type_of, spec.orders);
      } catch (const PreconditionError& e) {
        throw ParseError(where + ": " + e.what());
      }
      if (!table->complete())
        throw ParseError(where + " priority table is missing assigned sets: " +
                         label_set_to_string(table->missing_orders(), smap.ids));
      pi.rules.push_back(table);
      pi.specs.push_back(std::move(spec));
    } else {
      throw ParseError(where + " has unknown rule kind '" + kind +
                       "' (expected adjusted_scoring or priority_table)");
    }
  }

  // Preference lists: every student exactly once, schools valid, no repeats.
  pi.prefs.ranking.assign(n, {});
  std::vector<bool> has_prefs(n, false);
  for (const auto& [student_ext, list] : preferences.items()) {
    int i = smap.at(student_ext, "preference list");
    if (!list.is_array())
      throw ParseError("preference list of student '" + student_ext + "' must be an array");
    has_prefs[i] = true;
    for (const auto& v : list) {
      SchoolId s = cmap.at(as_string(v, "preference entry of student '" + student_ext + "'"),
                           "preference list of student '" + student_ext + "'");
      for (SchoolId seen : pi.prefs.ranking[i])
        if (seen == s)
          throw ParseError("student '" + student_ext + "' lists school '" + cmap.ids[s] +
                           "' twice");
      pi.prefs.ranking[i].push_back(s);
    }
  }
  for (int i = 0; i < n; ++i)
    if (!has_prefs[i])
      throw ParseError("student '" + smap.ids[i] + "' has no preference list");

  return pi;
}

ParsedInstance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read instance file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance_text(buffer.str());
}

namespace {

OrderedJson bounds_to_json(const std::vector<int>& bounds,
                           const std::vector<std::string>& type_labels) {
  OrderedJson out = OrderedJson::object();
  for (std::size_t t = 1; t < type_labels.size(); ++t) out[type_labels[t]] = bounds[t];
  return out;
}

OrderedJson rat_bounds_to_json(const std::vector<Rat>& bounds,
                               const std::vector<std::string>& type_labels) {
  OrderedJson out = OrderedJson::object();
  for (std::size_t t = 1; t < type_labels.size(); ++t) out[type_labels[t]] = to_string(bounds[t]);
  return out;
}

OrderedJson rule_to_json(const ParsedInstance& pi, SchoolId s) {
  const RuleSpec& spec = pi.specs[s];
  const std::vector<std::string>& type_labels = pi.inst.type_labels[s];
  OrderedJson rule = OrderedJson::object();
  if (spec.kind == RuleSpec::Kind::PriorityTable) {
    rule["kind"] = "priority_table";
    OrderedJson orders = OrderedJson::array();
    for (const StoredOrder& stored : spec.orders) {
      OrderedJson entry = OrderedJson::object();
      OrderedJson assigned = OrderedJson::array();
      for (StudentId i : stored.assigned) assigned.push_back(pi.inst.student_ids[i]);
      entry["assigned"] = std::move(assigned);
      OrderedJson classes = OrderedJson::array();
      for (const auto& cls : stored.classes) {
        OrderedJson members = OrderedJson::array();
        for (StudentId i : cls) {
          if (i == kNoStudent)
            members.push_back(nullptr);
          else
            members.push_back(pi.inst.student_ids[i]);
        }
        classes.push_back(std::move(members));
      }
      entry["classes"] = std::move(classes);
      orders.push_back(std::move(entry));
    }
    rule["orders"] = std::move(orders);
    return rule;
  }

  rule["kind"] = "adjusted_scoring";
  if (spec.preset) {
    rule["preset"] = preset_kind_to_string(*spec.preset);
    switch (*spec.preset) {
      case PresetKind::LinearDecay:
      case PresetKind::Reserves:
      case PresetKind::Quotas:
        rule["reserve"] = bounds_to_json(spec.params.reserve, type_labels);
        break;
      case PresetKind::SoftBounds:
      case PresetKind::ReservesAndQuotas:
        rule["reserve"] = bounds_to_json(spec.params.reserve, type_labels);
        rule["quota"] = bounds_to_json(spec.params.quota, type_labels);
        break;
      case PresetKind::FlatBonus:
        rule["bonus"] = rat_bounds_to_json(spec.params.bonus, type_labels);
        break;
      case PresetKind::DiminishingSqrt:
        rule["weight"] = rat_bounds_to_json(spec.params.weight, type_labels);
        break;
    }
    if (spec.params.sigma_floor) rule["sigma_floor"] = to_string(*spec.params.sigma_floor);
    return rule;
  }

  rule["sigma_floor"] = to_string(spec.sigma_floor);
  OrderedJson alpha = OrderedJson::object();
  for (std::size_t t = 1; t < type_labels.size(); ++t) {
    const AlphaSpec& a = spec.alpha[t];
    OrderedJson body = OrderedJson::object();
    if (a.sqrt_gap) {
      body["sqrt_weight"] = to_string(a.weight);
    } else {
      OrderedJson table = OrderedJson::array();
      for (const Rat& v : a.table) table.push_back(to_string(v));
      body["table"] = std::move(table);
    }
    alpha[type_labels[t]] = std::move(body);
  }
  rule["alpha"] = std::move(alpha);
  return rule;
}

}  // namespace

OrderedJson instance_to_json(const ParsedInstance& pi) {
  const int n = pi.inst.n_students();
  const int m = pi.inst.n_schools();
  OrderedJson doc = OrderedJson::object();
  doc["schema"] = kInstanceSchema;
  doc["schema_version"] = kSchemaVersion;

  OrderedJson students = OrderedJson::array();
  for (int i = 0; i < n; ++i) {
    OrderedJson st = OrderedJson::object();
    st["id"] = pi.inst.student_ids[i];
    OrderedJson types = OrderedJson::object();
    for (SchoolId s = 0; s < m; ++s)
      types[pi.inst.school_ids[s]] = pi.inst.type_labels[s][pi.inst.type_of[s][i]];
    st["types"] = std::move(types);
    OrderedJson scores = OrderedJson::object();
    for (SchoolId s = 0; s < m; ++s)
      if (pi.specs[s].kind == RuleSpec::Kind::AdjustedScoring)
        scores[pi.inst.school_ids[s]] = to_string(pi.specs[s].sigma[i]);
    if (!scores.empty()) st["scores"] = std::move(scores);
    students.push_back(std::move(st));
  }
  doc["students"] = std::move(students);

  OrderedJson schools = OrderedJson::array();
  for (SchoolId s = 0; s < m; ++s) {
    OrderedJson sc = OrderedJson::object();
    sc["id"] = pi.inst.school_ids[s];
    sc["capacity"] = pi.inst.capacity[s];
    sc["rule"] = rule_to_json(pi, s);
    schools.push_back(std::move(sc));
  }
  doc["schools"] = std::move(schools);

  OrderedJson preferences = OrderedJson::object();
  for (int i = 0; i < n; ++i) {
    OrderedJson list = OrderedJson::array();
    for (SchoolId s : pi.prefs.ranking[i]) list.push_back(pi.inst.school_ids[s]);
    preferences[pi.inst.student_ids[i]] = std::move(list);
  }
  doc["preferences"] = std::move(preferences);
  return doc;
}

// ---------------------------------------------------------------------------
// Matching documents.

Matching parse_matching_text(const Instance& inst, const std::string& text) {
  OrderedJson doc;
  try {
    doc = OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("syntax error: ") + e.what());
  }
  check_schema(doc, kMatchingSchema, "matching");

  std::map<std::string, StudentId> student_of;
  for (int i = 0; i < inst.n_students(); ++i) student_of[inst.student_ids[i]] = i;
  std::map<std::string, SchoolId> school_of;
  for (SchoolId s = 0; s < inst.n_schools(); ++s) school_of[inst.school_ids[s]] = s;

  const OrderedJson& assignment = field(doc, "assignment", "matching");
  if (!assignment.is_object()) throw ParseError("'assignment' must map student ids to schools");
  std::vector<SchoolId> seats(inst.n_students(), kUnmatched);
  std::vector<bool> seen(inst.n_students(), false);
  for (const auto& [student_ext, value] : assignment.items()) {
    auto it = student_of.find(student_ext);
    if (it == student_of.end())
      throw ParseError("matching assigns unknown student '" + student_ext + "'");
    if (seen[it->second])
      throw ParseError("matching assigns student '" + student_ext + "' twice");
    seen[it->second] = true;
    if (value.is_null()) continue;
    std::string school_ext = as_string(value, "assignment of student '" + student_ext + "'");
    auto sit = school_of.find(school_ext);
    if (sit == school_of.end())
      throw ParseError("matching sends student '" + student_ext + "' to unknown school '" +
                       school_ext + "'");
    seats[it->second] = sit->second;
  }
  for (int i = 0; i < inst.n_students(); ++i)
    if (!seen[i])
      throw ParseError("matching says nothing about student '" + inst.student_ids[i] + "'");

  Matching m = Matching::from_assignment(inst, std::move(seats));
  if (auto err = validate_matching(inst, m)) throw ParseError("not a matching: " + *err);
  return m;
}

Matching parse_matching_file(const Instance& inst, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read matching file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_matching_text(inst, buffer.str());
}

OrderedJson matching_to_json(const Instance& inst, const Matching& m) {
  OrderedJson doc = OrderedJson::object();
  doc["schema"] = kMatchingSchema;
  doc["schema_version"] = kSchemaVersion;
  OrderedJson assignment = OrderedJson::object();
  for (int i = 0; i < inst.n_students(); ++i) {
    if (m.assignment[i] == kUnmatched)
      assignment[inst.student_ids[i]] = nullptr;
    else
      assignment[inst.student_ids[i]] = inst.school_ids[m.assignment[i]];
  }
  doc["assignment"] = std::move(assignment);
  return doc;
}

// ---------------------------------------------------------------------------
// Report documents.

OrderedJson report_to_json(const ReportDocument& report) {
  OrderedJson doc = OrderedJson::object();
  doc["schema"] = kReportSchema;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = report.command;
  doc["seed"] = report.seed;
  doc["verdict"] = report.verdict_pass ? "pass" : "fail";
  doc["summary"] = report.summary;
  doc["sections"] = report.sections.is_null() ? OrderedJson::object() : report.sections;
  return doc;
}

ReportDocument report_from_json(const OrderedJson& doc) {
  check_schema(doc, kReportSchema, "report");
  ReportDocument report;
  report.command = as_string(field(doc, "command", "report"), "command");
  const OrderedJson& seed = field(doc, "seed", "report");
  if (!seed.is_number_unsigned() && !seed.is_number_integer())
    throw ParseError("report seed must be an integer");
  report.seed = seed.get<std::uint64_t>();
  std::string verdict = as_string(field(doc, "verdict", "report"), "verdict");
  if (verdict != "pass" && verdict != "fail")
    throw ParseError("report verdict must be 'pass' or 'fail', got '" + verdict + "'");
  report.verdict_pass = verdict == "pass";
  report.summary = as_string(field(doc, "summary", "report"), "summary");
  report.sections = field(doc, "sections", "report");
  if (!report.sections.is_object()) throw ParseError("report sections must be an object");
  return report;
}

std::string to_text(const OrderedJson& doc) { return doc.dump(2) + "\n"; }

}  // namespace csm
