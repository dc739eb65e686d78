#include "wayplan/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wayplan/ioutil.hpp"

namespace wayplan {

namespace {

using nlohmann::json;

int stop_limit(Difficulty d) {
  switch (d) {
    case Difficulty::Simple: return 2;
    case Difficulty::Medium: return 3;
    case Difficulty::Hard: return 5;
  }
  return 0;
}

std::string num_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string value_str(const AttrValue& v) {
  struct V {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return num_str(static_cast<double>(i)); }
    std::string operator()(double d) const { return num_str(d); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(V{}, v);
}

std::string filter_str(const AttrFilter& f) {
  return f.field + "|" + filter_op_name(f.op) + "|" + value_str(f.value);
}

std::string poi_tuple(const PoiRequirement& req) {
  std::string out;
  if (req.alternatives.empty()) {
    std::vector<std::string> fs;
    for (const AttrFilter& f : req.filters) fs.push_back(filter_str(f));
    std::sort(fs.begin(), fs.end());
    out = std::string(category_name(req.category)) + "[";
    for (std::size_t i = 0; i < fs.size(); ++i) out += (i ? "," : "") + fs[i];
    out += "]";
  } else {
    std::vector<std::string> alts;
    for (const PoiRequirement& a : req.alternatives) alts.push_back(poi_tuple(a));
    std::sort(alts.begin(), alts.end());
    out = "or{";
    for (std::size_t i = 0; i < alts.size(); ++i) out += (i ? "," : "") + alts[i];
    out += "}";
  }
  if (req.fixed_position) out += "@" + std::to_string(*req.fixed_position);
  return out;
}

std::string constraint_str(const HardPathConstraint& hc) {
  if (hc.kind == ConstraintKind::ForbidEdges) {
    std::vector<std::string> es;
    for (auto [u, v] : hc.edges) {
      if (u > v) std::swap(u, v);
      es.push_back(std::to_string(u) + "-" + std::to_string(v));
    }
    std::sort(es.begin(), es.end());
    std::string out = "forbid_edges{";
    for (std::size_t i = 0; i < es.size(); ++i) out += (i ? "," : "") + es[i];
    return out + "}";
  }
  const char* kind =
      hc.kind == ConstraintKind::AvoidAttrAbove ? "avoid_attr_above" : "require_attr_below";
  return std::string(kind) + "|" + kObjectiveNames[static_cast<std::size_t>(hc.attribute)] +
         "|" + num_str(hc.threshold);
}

std::vector<std::string> pref_pairs(const PreferenceVector& p) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < kNumObjectives; ++i) {
    if (p.weights[i] != 0.0) {
      out.emplace_back(std::string(kObjectiveNames[i]) + "=" + num_str(p.weights[i]));
    }
  }
  return out;
}

double set_f1(std::vector<std::string> pred, std::vector<std::string> gold) {
  if (pred.empty() && gold.empty()) return 1.0;
  std::sort(pred.begin(), pred.end());
  std::sort(gold.begin(), gold.end());
  std::vector<std::string> common;
  std::set_intersection(pred.begin(), pred.end(), gold.begin(), gold.end(),
                        std::back_inserter(common));
  double inter = static_cast<double>(common.size());
  double p = pred.empty() ? 0.0 : inter / static_cast<double>(pred.size());
  double r = gold.empty() ? 0.0 : inter / static_cast<double>(gold.size());
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

}  // namespace

const char* difficulty_name(Difficulty d) {
  switch (d) {
    case Difficulty::Simple: return "simple";
    case Difficulty::Medium: return "medium";
    case Difficulty::Hard: return "hard";
  }
  return "?";
}

std::optional<Difficulty> difficulty_from_name(const std::string& name) {
  if (name == "simple") return Difficulty::Simple;
  if (name == "medium") return Difficulty::Medium;
  if (name == "hard") return Difficulty::Hard;
  return std::nullopt;
}

std::vector<BenchQuery> load_corpus(const std::string& bytes) {
  std::vector<BenchQuery> out;
  std::istringstream in(bytes);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error("corpus line " + std::to_string(lineno) + ": " + e.what());
    }
    BenchQuery q;
    try {
      q.id = j.at("id").get<std::string>();
      q.text = j.at("text").get<std::string>();
      auto d = difficulty_from_name(j.at("difficulty").get<std::string>());
      if (!d) throw std::runtime_error("unknown difficulty");
      q.difficulty = *d;
      ValidationResult gold = validate_intent(j.at("gold").dump());
      if (!gold.ok()) {
        std::string msg = gold.violations.empty() ? "invalid gold"
                                                  : gold.violations.front().message;
        throw std::runtime_error("invalid gold intent: " + msg);
      }
      q.gold = *gold.intent;
    } catch (const json::exception& e) {
      throw std::runtime_error("corpus line " + std::to_string(lineno) + ": " + e.what());
    }
    if (static_cast<int>(q.gold.poi_stops.size()) > stop_limit(q.difficulty)) {
      throw std::runtime_error("corpus line " + std::to_string(lineno) + ": query '" + q.id +
                               "' exceeds the stop limit for its difficulty tier");
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::string save_corpus(const std::vector<BenchQuery>& corpus) {
  std::string out;
  for (const BenchQuery& q : corpus) {
    json j;
    j["id"] = q.id;
    j["difficulty"] = difficulty_name(q.difficulty);
    j["text"] = q.text;
    j["gold"] = json::parse(serialize_intent(q.gold));
    out += j.dump();
    out += "\n";
  }
  return out;
}

QueryScore score_parse(const ParseOutcome& pred, const ParsedIntent& gold) {
  QueryScore s;
  if (!pred.schema_valid || !pred.intent) return s;  // zeros
  s.schema_valid = true;
  const ParsedIntent& p = *pred.intent;

  std::vector<std::string> pred_pois, gold_pois;
  for (const PoiRequirement& r : p.poi_stops) pred_pois.push_back(poi_tuple(r));
  for (const PoiRequirement& r : gold.poi_stops) gold_pois.push_back(poi_tuple(r));
  s.poi_f1 = set_f1(pred_pois, gold_pois);

  std::vector<std::string> pred_cs, gold_cs;
  for (const HardPathConstraint& c : p.hard_constraints) pred_cs.push_back(constraint_str(c));
  for (const HardPathConstraint& c : gold.hard_constraints) gold_cs.push_back(constraint_str(c));
  s.const_f1 = set_f1(pred_cs, gold_cs);

  s.pref_f1 = set_f1(pref_pairs(p.soft_prefs), pref_pairs(gold.soft_prefs));
  return s;
}

ParseScore aggregate(const std::vector<QueryScore>& scores) {
  if (scores.empty()) throw std::runtime_error("cannot aggregate an empty corpus");
  ParseScore agg;
  for (const QueryScore& s : scores) {
    agg.poi_f1 += s.poi_f1;
    agg.const_f1 += s.const_f1;
    agg.pref_f1 += s.pref_f1;
    agg.struct_rate += s.schema_valid ? 1.0 : 0.0;
  }
  double n = static_cast<double>(scores.size());
  agg.poi_f1 /= n;
  agg.const_f1 /= n;
  agg.pref_f1 /= n;
  agg.struct_rate /= n;
  agg.overall_f1 = (agg.poi_f1 + agg.const_f1 + agg.pref_f1) / 3.0;
  return agg;
}

std::string score_report_json(const ParseScore& score,
                              const std::vector<std::pair<std::string, QueryScore>>& per_query) {
  std::string out = "{";
  out += "\"const_f1\":" + fmt6(score.const_f1);
  out += ",\"overall_f1\":" + fmt6(score.overall_f1);
  out += ",\"per_query\":[";
  for (std::size_t i = 0; i < per_query.size(); ++i) {
    const auto& [id, s] = per_query[i];
    if (i) out += ",";
    out += "{\"const_f1\":" + fmt6(s.const_f1);
    out += ",\"id\":\"" + id + "\"";
    out += ",\"poi_f1\":" + fmt6(s.poi_f1);
    out += ",\"pref_f1\":" + fmt6(s.pref_f1);
    out += ",\"schema_valid\":" + std::string(s.schema_valid ? "true" : "false");
    out += "}";
  }
  out += "],\"poi_f1\":" + fmt6(score.poi_f1);
  out += ",\"pref_f1\":" + fmt6(score.pref_f1);
  out += ",\"struct_rate\":" + fmt6(score.struct_rate);
  out += "}\n";
  return out;
}

std::string score_report_text(const ParseScore& score) {
  std::ostringstream out;
  auto row = [&](const char* label, double v) {
    out << label;
    for (std::size_t i = std::string(label).size(); i < 14; ++i) out << ' ';
    out << fmt2(v) << "\n";
  };
  out << "component     score\n";
  row("poi_f1", score.poi_f1);
  row("const_f1", score.const_f1);
  row("pref_f1", score.pref_f1);
  row("struct_rate", score.struct_rate);
  row("overall_f1", score.overall_f1);
  return out.str();
}

std::vector<ScenarioRow> scenario_table(const RouteGraph& graph, const PoiCatalog& catalog,
                                        const std::vector<std::pair<std::string, ParsedIntent>>&
                                            scenarios) {
  std::vector<ScenarioRow> rows;
  for (const auto& [name, intent] : scenarios) {
    ScenarioRow row;
    row.name = name;
    ExecuteOutcome outcome = execute_scalarized(intent, graph, catalog);
    if (const auto* fail = std::get_if<PlanFailure>(&outcome)) {
      row.message = fail->message;
    } else {
      const auto& res = std::get<ExecutionResult>(outcome);
      if (res.candidates.empty()) {
        row.message = "no candidate produced";
      } else {
        row.feasible = true;
        row.cost = res.candidates.front().cost;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {
// CSV column order is alphabetical by attribute name.
constexpr std::size_t kCsvOrder[kNumObjectives] = {3, 0, 2, 1, 4, 5};
}  // namespace

std::string scenario_csv(const std::vector<ScenarioRow>& rows) {
  std::string out = "scenario,cost_danger,cost_dist,cost_energy,cost_scenic,cost_slope,cost_toll\n";
  std::string comments;
  for (const ScenarioRow& row : rows) {
    out += row.name;
    if (row.feasible) {
      for (std::size_t a : kCsvOrder) out += "," + fmt2(row.cost.at(a));
    } else {
      out += ",,,,,,";
      comments += "# " + row.name + " infeasible: " + row.message + "\n";
    }
    out += "\n";
  }
  return out + comments;
}

std::string scenario_text(const std::vector<ScenarioRow>& rows) {
  std::ostringstream out;
  auto pad = [&](const std::string& s, std::size_t w) {
    out << s;
    for (std::size_t i = s.size(); i < w; ++i) out << ' ';
  };
  std::size_t name_w = 8;
  for (const ScenarioRow& r : rows) name_w = std::max(name_w, r.name.size() + 2);
  pad("scenario", name_w);
  for (std::size_t a : kCsvOrder) pad(std::string("cost_") + kObjectiveNames[a], 13);
  out << "\n";
  for (const ScenarioRow& r : rows) {
    pad(r.name, name_w);
    if (r.feasible) {
      for (std::size_t a : kCsvOrder) pad(fmt2(r.cost.at(a)), 13);
    } else {
      out << "infeasible: " << r.message;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace wayplan
