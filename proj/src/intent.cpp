#include "wayplan/intent.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "wayplan/ioutil.hpp"

namespace wayplan {

using nlohmann::json;

const char* metric_name(GlobalMetric m) {
  switch (m) {
    case GlobalMetric::TotalDist: return "total_dist";
    case GlobalMetric::TotalTime: return "total_time";
    case GlobalMetric::TotalBudget: return "total_budget";
  }
  return "?";
}

std::optional<GlobalMetric> metric_from_name(const std::string& name) {
  if (name == "total_dist") return GlobalMetric::TotalDist;
  if (name == "total_time") return GlobalMetric::TotalTime;
  if (name == "total_budget") return GlobalMetric::TotalBudget;
  return std::nullopt;
}

namespace {

const char* constraint_kind_name(ConstraintKind k) {
  switch (k) {
    case ConstraintKind::AvoidAttrAbove: return "avoid_attr_above";
    case ConstraintKind::RequireAttrBelow: return "require_attr_below";
    case ConstraintKind::ForbidEdges: return "forbid_edges";
  }
  return "?";
}

std::optional<ConstraintKind> constraint_kind_from_name(const std::string& s) {
  if (s == "avoid_attr_above") return ConstraintKind::AvoidAttrAbove;
  if (s == "require_attr_below") return ConstraintKind::RequireAttrBelow;
  if (s == "forbid_edges") return ConstraintKind::ForbidEdges;
  return std::nullopt;
}

struct Collector {
  std::vector<Violation> violations;
  void add(std::string path, std::string rule, std::string message) {
    violations.push_back(Violation{std::move(path), std::move(rule), std::move(message)});
  }
};

std::optional<Point> parse_point(const json& j, const std::string& path, Collector& c) {
  if (!j.is_object() || !j.contains("x") || !j.contains("y") || !j["x"].is_number() ||
      !j["y"].is_number()) {
    c.add(path, "point", "expected an object with numeric x and y");
    return std::nullopt;
  }
  return Point{j["x"].get<double>(), j["y"].get<double>()};
}

std::optional<AttrValue> parse_attr_value(const json& j, const std::string& path, Collector& c) {
  if (j.is_boolean()) return AttrValue{j.get<bool>()};
  if (j.is_number_integer()) return AttrValue{j.get<std::int64_t>()};
  if (j.is_number_float()) return AttrValue{j.get<double>()};
  if (j.is_string()) return AttrValue{j.get<std::string>()};
  c.add(path, "value", "filter value must be a boolean, number or string");
  return std::nullopt;
}

std::optional<PoiRequirement> parse_poi_requirement(const json& j, const std::string& path,
                                                    Collector& c, bool allow_alternatives) {
  if (!j.is_object()) {
    c.add(path, "type", "POI stop must be an object");
    return std::nullopt;
  }
  PoiRequirement req;
  bool ok = true;
  std::string cat = j.value("category", "");
  auto category = category_from_name(cat);
  if (!category) {
    c.add(path + ".category", "enum", "unknown category '" + cat + "'");
    ok = false;
  } else {
    req.category = *category;
  }
  if (j.contains("filters")) {
    if (!j["filters"].is_array()) {
      c.add(path + ".filters", "type", "filters must be an array");
      ok = false;
    } else {
      int i = 0;
      for (const auto& fj : j["filters"]) {
        std::string fpath = path + ".filters[" + std::to_string(i++) + "]";
        AttrFilter f;
        f.field = fj.value("field", "");
        auto op = filter_op_from_name(fj.value("op", ""));
        if (!op) {
          c.add(fpath + ".op", "enum", "unknown op '" + fj.value("op", "") + "'");
          ok = false;
          continue;
        }
        f.op = *op;
        if (!fj.contains("value")) {
          c.add(fpath + ".value", "required", "filter value missing");
          ok = false;
          continue;
        }
        auto val = parse_attr_value(fj["value"], fpath + ".value", c);
        if (!val) {
          ok = false;
          continue;
        }
        f.value = *val;
        if (category) {
          try {
            check_filter(*category, f);
          } catch (const PoiError& e) {
            c.add(fpath, "filter", e.what());
            ok = false;
            continue;
          }
        }
        req.filters.push_back(std::move(f));
      }
    }
  }
  if (j.contains("fixed_position")) {
    if (!j["fixed_position"].is_number_integer() || j["fixed_position"].get<int>() < 0) {
      c.add(path + ".fixed_position", "range", "fixed_position must be a non-negative integer");
      ok = false;
    } else {
      req.fixed_position = j["fixed_position"].get<int>();
    }
  }
  if (j.contains("alternatives")) {
    if (!allow_alternatives) {
      c.add(path + ".alternatives", "nesting", "alternatives cannot be nested");
      ok = false;
    } else if (!j["alternatives"].is_array() || j["alternatives"].empty()) {
      c.add(path + ".alternatives", "non_empty", "alternatives must be a non-empty array");
      ok = false;
    } else {
      int i = 0;
      for (const auto& aj : j["alternatives"]) {
        auto alt = parse_poi_requirement(aj, path + ".alternatives[" + std::to_string(i++) + "]",
                                         c, false);
        if (!alt) {
          ok = false;
        } else {
          req.alternatives.push_back(std::move(*alt));
        }
      }
    }
  }
  if (!ok) return std::nullopt;
  return req;
}

std::optional<HardPathConstraint> parse_constraint(const json& j, const std::string& path,
                                                   Collector& c) {
  if (!j.is_object()) {
    c.add(path, "type", "constraint must be an object");
    return std::nullopt;
  }
  HardPathConstraint hc;
  auto kind = constraint_kind_from_name(j.value("kind", ""));
  if (!kind) {
    c.add(path + ".kind", "enum", "unknown constraint kind '" + j.value("kind", "") + "'");
    return std::nullopt;
  }
  hc.kind = *kind;
  if (hc.kind == ConstraintKind::ForbidEdges) {
    if (j.contains("threshold")) {
      c.add(path + ".threshold", "shape", "forbid_edges does not take a threshold");
      return std::nullopt;
    }
    if (!j.contains("edges") || !j["edges"].is_array() || j["edges"].empty()) {
      c.add(path + ".edges", "non_empty", "forbid_edges requires a non-empty edges array");
      return std::nullopt;
    }
    for (const auto& ej : j["edges"]) {
      if (!ej.is_array() || ej.size() != 2 || !ej[0].is_number_integer() ||
          !ej[1].is_number_integer()) {
        c.add(path + ".edges", "shape", "each edge must be a [u, v] pair of node ids");
        return std::nullopt;
      }
      hc.edges.emplace_back(ej[0].get<NodeId>(), ej[1].get<NodeId>());
    }
    return hc;
  }
  auto attr = objective_from_name(j.value("attribute", ""));
  if (!attr) {
    c.add(path + ".attribute", "enum", "unknown attribute '" + j.value("attribute", "") + "'");
    return std::nullopt;
  }
  hc.attribute = *attr;
  if (!j.contains("threshold") || !j["threshold"].is_number()) {
    c.add(path + ".threshold", "required", "attribute constraint requires a numeric threshold");
    return std::nullopt;
  }
  hc.threshold = j["threshold"].get<double>();
  if (hc.threshold < 0.0 || hc.threshold > 1.0) {
    c.add(path + ".threshold", "range", "threshold must lie in [0,1]");
    return std::nullopt;
  }
  return hc;
}

}  // namespace

ValidationResult validate_intent(const std::string& bytes) {
  Collector c;
  json j;
  try {
    j = json::parse(bytes);
  } catch (const json::parse_error& e) {
    c.add("", "json", e.what());
    return ValidationResult{std::nullopt, std::move(c.violations)};
  }
  if (!j.is_object()) {
    c.add("", "type", "intent document must be a JSON object");
    return ValidationResult{std::nullopt, std::move(c.violations)};
  }
  ParsedIntent intent;
  if (j.value("version", 0) != 1) c.add("version", "const", "version must be 1");

  std::optional<Point> start;
  std::optional<Point> end;
  if (j.contains("start")) {
    start = parse_point(j["start"], "start", c);
  } else {
    c.add("start", "required", "start missing");
  }
  if (j.contains("end")) {
    end = parse_point(j["end"], "end", c);
  } else {
    c.add("end", "required", "end missing");
  }
  intent.loop = j.value("loop", false);
  if (start && end) {
    intent.start = *start;
    intent.end = *end;
    if (*start == *end && !intent.loop) {
      c.add("end", "distinct", "start equals end but loop is not set");
    }
  }

  if (j.contains("poi_stops")) {
    if (!j["poi_stops"].is_array()) {
      c.add("poi_stops", "type", "poi_stops must be an array");
    } else {
      int i = 0;
      for (const auto& sj : j["poi_stops"]) {
        auto req = parse_poi_requirement(sj, "poi_stops[" + std::to_string(i++) + "]", c, true);
        if (req) intent.poi_stops.push_back(std::move(*req));
      }
    }
  }

  if (j.contains("hard_constraints")) {
    if (!j["hard_constraints"].is_array()) {
      c.add("hard_constraints", "type", "hard_constraints must be an array");
    } else {
      int i = 0;
      for (const auto& hj : j["hard_constraints"]) {
        auto hc = parse_constraint(hj, "hard_constraints[" + std::to_string(i++) + "]", c);
        if (hc) intent.hard_constraints.push_back(std::move(*hc));
      }
    }
  }

  if (j.contains("soft_prefs")) {
    if (!j["soft_prefs"].is_object()) {
      c.add("soft_prefs", "type", "soft_prefs must be an object");
    } else {
      for (const auto& [key, val] : j["soft_prefs"].items()) {
        auto obj = objective_from_name(key);
        if (!obj) {
          c.add("soft_prefs." + key, "enum", "unknown feature '" + key + "'");
          continue;
        }
        double w = val.is_number() ? val.get<double>() : -1.0;
        if (w != 0.0 && w != 0.5 && w != 1.0) {
          c.add("soft_prefs." + key, "domain",
                "soft_prefs." + key + " not in {0,0.5,1}");
          continue;
        }
        intent.soft_prefs[*obj] = w;
      }
    }
  }

  if (j.contains("specials")) {
    if (!j["specials"].is_array()) {
      c.add("specials", "type", "specials must be an array");
    } else {
      int i = 0;
      for (const auto& sj : j["specials"]) {
        std::string path = "specials[" + std::to_string(i++) + "]";
        SpecialRequirement sr;
        sr.topic = sj.value("topic", "");
        if (sr.topic.empty()) c.add(path + ".topic", "required", "topic missing");
        std::string mode = sj.value("mode", "");
        if (mode == "info") {
          sr.mode = SpecialMode::Info;
          sr.note = sj.value("note", "");
        } else if (mode == "modify") {
          sr.mode = SpecialMode::Modify;
          if (!sj.contains("constraint")) {
            c.add(path + ".constraint", "required",
                  "modify specials must carry a hard constraint payload");
            continue;
          }
          auto hc = parse_constraint(sj["constraint"], path + ".constraint", c);
          if (!hc) continue;
          sr.constraint = std::move(*hc);
        } else {
          c.add(path + ".mode", "enum", "mode must be \"info\" or \"modify\"");
          continue;
        }
        intent.specials.push_back(std::move(sr));
      }
    }
  }

  if (j.contains("globals")) {
    if (!j["globals"].is_array()) {
      c.add("globals", "type", "globals must be an array");
    } else {
      int i = 0;
      for (const auto& gj : j["globals"]) {
        std::string path = "globals[" + std::to_string(i++) + "]";
        GlobalConstraint gc;
        auto metric = metric_from_name(gj.value("metric", ""));
        if (!metric) {
          c.add(path + ".metric", "enum", "unknown metric '" + gj.value("metric", "") + "'");
          continue;
        }
        gc.metric = *metric;
        if (!gj.contains("threshold") || !gj["threshold"].is_number() ||
            gj["threshold"].get<double>() <= 0.0) {
          c.add(path + ".threshold", "range", "threshold must be a positive number");
          continue;
        }
        gc.threshold = gj["threshold"].get<double>();
        gc.critical = gj.value("critical", false);
        intent.globals.push_back(gc);
      }
    }
  }

  if (!c.violations.empty()) {
    return ValidationResult{std::nullopt, std::move(c.violations)};
  }
  return ValidationResult{std::move(intent), {}};
}

namespace {

std::string num(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  // Trim trailing zeros off a 6-decimal rendering.
  std::string s = fmt6(v);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string quote(const std::string& s) {
  return json(s).dump();
}

void write_attr_value(std::ostringstream& out, const AttrValue& v) {
  if (std::holds_alternative<bool>(v)) {
    out << (std::get<bool>(v) ? "true" : "false");
  } else if (std::holds_alternative<std::int64_t>(v)) {
    out << std::get<std::int64_t>(v);
  } else if (std::holds_alternative<double>(v)) {
    // Keep a decimal point so the value round-trips as a real, not an int.
    std::string s = num(std::get<double>(v));
    if (s.find('.') == std::string::npos) s += ".0";
    out << s;
  } else {
    out << quote(std::get<std::string>(v));
  }
}

void write_constraint(std::ostringstream& out, const HardPathConstraint& hc) {
  out << "{";
  if (hc.kind == ConstraintKind::ForbidEdges) {
    out << "\"edges\":[";
    for (std::size_t i = 0; i < hc.edges.size(); ++i) {
      if (i) out << ",";
      out << "[" << hc.edges[i].first << "," << hc.edges[i].second << "]";
    }
    out << "],\"kind\":\"forbid_edges\"";
  } else {
    out << "\"attribute\":" << quote(objective_name(hc.attribute)) << ",\"kind\":"
        << quote(constraint_kind_name(hc.kind)) << ",\"threshold\":" << num(hc.threshold);
  }
  out << "}";
}

void write_poi_requirement(std::ostringstream& out, const PoiRequirement& req) {
  out << "{";
  if (!req.alternatives.empty()) {
    out << "\"alternatives\":[";
    for (std::size_t i = 0; i < req.alternatives.size(); ++i) {
      if (i) out << ",";
      write_poi_requirement(out, req.alternatives[i]);
    }
    out << "],";
  }
  out << "\"category\":" << quote(category_name(req.category)) << ",\"filters\":[";
  for (std::size_t i = 0; i < req.filters.size(); ++i) {
    const AttrFilter& f = req.filters[i];
    if (i) out << ",";
    out << "{\"field\":" << quote(f.field) << ",\"op\":" << quote(filter_op_name(f.op))
        << ",\"value\":";
    write_attr_value(out, f.value);
    out << "}";
  }
  out << "]";
  if (req.fixed_position) out << ",\"fixed_position\":" << *req.fixed_position;
  out << "}";
}

}  // namespace

std::string serialize_intent(const ParsedIntent& intent) {
  std::ostringstream out;
  out << "{\"end\":{\"x\":" << num(intent.end.x) << ",\"y\":" << num(intent.end.y) << "}";
  out << ",\"globals\":[";
  for (std::size_t i = 0; i < intent.globals.size(); ++i) {
    const GlobalConstraint& g = intent.globals[i];
    if (i) out << ",";
    out << "{\"critical\":" << (g.critical ? "true" : "false") << ",\"metric\":"
        << quote(metric_name(g.metric)) << ",\"threshold\":" << num(g.threshold) << "}";
  }
  out << "],\"hard_constraints\":[";
  for (std::size_t i = 0; i < intent.hard_constraints.size(); ++i) {
    if (i) out << ",";
    write_constraint(out, intent.hard_constraints[i]);
  }
  out << "]";
  if (intent.loop) out << ",\"loop\":true";
  out << ",\"poi_stops\":[";
  for (std::size_t i = 0; i < intent.poi_stops.size(); ++i) {
    if (i) out << ",";
    write_poi_requirement(out, intent.poi_stops[i]);
  }
  out << "],\"soft_prefs\":{";
  bool first = true;
  for (std::size_t a = 0; a < kNumObjectives; ++a) {
    if (intent.soft_prefs.weights[a] == 0.0) continue;
    if (!first) out << ",";
    first = false;
    out << quote(kObjectiveNames[a]) << ":" << num(intent.soft_prefs.weights[a]);
  }
  out << "},\"specials\":[";
  for (std::size_t i = 0; i < intent.specials.size(); ++i) {
    const SpecialRequirement& s = intent.specials[i];
    if (i) out << ",";
    out << "{";
    if (s.mode == SpecialMode::Modify) {
      out << "\"constraint\":";
      write_constraint(out, *s.constraint);
      out << ",\"mode\":\"modify\"";
    } else {
      out << "\"mode\":\"info\",\"note\":" << quote(s.note);
    }
    out << ",\"topic\":" << quote(s.topic) << "}";
  }
  out << "],\"start\":{\"x\":" << num(intent.start.x) << ",\"y\":" << num(intent.start.y)
      << "},\"version\":1}";
  return out.str();
}

SearchDerivation derive_search_params(const PreferenceVector& prefs) {
  SearchDerivation d;
  d.active.insert(Objective::Dist);
  d.weights[static_cast<std::size_t>(Objective::Dist)] = 1.0;
  for (std::size_t a = 1; a < kNumObjectives; ++a) {
    double p = prefs.weights[a];
    if (p == 0.0) continue;
    auto obj = static_cast<Objective>(a);
    d.active.insert(obj);
    d.weights[a] = p;
    if (p == 1.0) {
      // A strong requirement doubles as an edge-level cutoff: the bimodal
      // 0.1/0.9 attribute design makes 0.5 the natural separator.
      d.implied.push_back(HardPathConstraint{ConstraintKind::AvoidAttrAbove, obj, 0.5, {}});
    }
  }
  return d;
}

}  // namespace wayplan
