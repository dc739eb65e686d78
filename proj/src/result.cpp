#include "wayplan/result.hpp"

#include "wayplan/ioutil.hpp"

namespace wayplan {

namespace {

// Object keys in alphabetical attribute order.
constexpr std::size_t kAlphaOrder[kNumObjectives] = {3, 0, 2, 1, 4, 5};

std::string cost_json(const CostVector& c) {
  std::string out = "{";
  for (std::size_t i = 0; i < kNumObjectives; ++i) {
    std::size_t a = kAlphaOrder[i];
    if (i) out += ",";
    out += "\"" + std::string(kObjectiveNames[a]) + "\":" + fmt6(c.at(a));
  }
  return out + "}";
}

std::string verdict_json(const Verdict& v) {
  std::string out = "{\"notifications\":[";
  for (std::size_t i = 0; i < v.notifications.size(); ++i) {
    if (i) out += ",";
    out += "\"" + json_escape(v.notifications[i]) + "\"";
  }
  out += "],\"relaxations\":[";
  for (std::size_t i = 0; i < v.relaxations.size(); ++i) {
    if (i) out += ",";
    out += "{\"factor\":" + fmt2(v.relaxations[i].second) + ",\"metric\":\"" +
           metric_name(v.relaxations[i].first) + "\"}";
  }
  out += "],\"replan_rounds\":" + std::to_string(v.replan_rounds);
  out += ",\"status\":\"" + std::string(verdict_status_name(v.status)) + "\"";
  out += ",\"violations\":[";
  for (std::size_t i = 0; i < v.violations.size(); ++i) {
    const ViolationEntry& e = v.violations[i];
    if (i) out += ",";
    out += "{\"metric\":\"" + std::string(metric_name(e.metric)) +
           "\",\"threshold\":" + fmt6(e.threshold) + ",\"value\":" + fmt6(e.value) + "}";
  }
  return out + "]}";
}

std::string string_array(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += "\"" + json_escape(xs[i]) + "\"";
  }
  return out + "]";
}

}  // namespace

const char* verdict_status_name(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Feasible: return "feasible";
    case VerdictStatus::Infeasible: return "infeasible";
    case VerdictStatus::Relaxed: return "relaxed";
  }
  return "?";
}

std::string serialize_result(const RouteResult& result) {
  std::string out = "{\"candidates\":[";
  for (std::size_t i = 0; i < result.candidates.size(); ++i) {
    const RouteCandidate& c = result.candidates[i];
    if (i) out += ",";
    out += "{\"cost\":" + cost_json(c.cost);
    out += ",\"path\":[";
    for (std::size_t j = 0; j < c.path.size(); ++j) {
      if (j) out += ",";
      out += std::to_string(c.path[j]);
    }
    out += "]";
    if (i < result.rationales.size()) {
      out += ",\"rationale\":\"" + json_escape(result.rationales[i]) + "\"";
    }
    if (i < result.verdicts.size()) {
      out += ",\"verdict\":" + verdict_json(result.verdicts[i]);
    }
    out += ",\"waypoints\":[";
    for (std::size_t j = 0; j < c.waypoints.size(); ++j) {
      const Stop& s = c.waypoints[j];
      if (j) out += ",";
      out += "{\"node\":" + std::to_string(s.node) + ",\"poi_id\":\"" + json_escape(s.poi_id) +
             "\"}";
    }
    out += "]}";
  }
  out += "],\"chosen\":" + std::to_string(result.chosen);
  out += ",\"intent\":" + serialize_intent(result.intent);
  out += ",\"notes\":" + string_array(result.notes);
  out += ",\"query\":\"" + json_escape(result.query) + "\"";
  out += ",\"version\":1}\n";
  return out;
}

std::string serialize_plan_failure(const std::string& query, const PlanFailure& failure) {
  std::string out = "{\"error\":\"infeasible\"";
  out += ",\"binding_constraints\":" + string_array(failure.binding_constraints);
  out += ",\"message\":\"" + json_escape(failure.message) + "\"";
  out += ",\"query\":\"" + json_escape(query) + "\"";
  out += ",\"task_id\":\"" + json_escape(failure.task_id) + "\"";
  return out + ",\"version\":1}\n";
}

std::string serialize_parse_failure(const std::string& query,
                                    const std::vector<Violation>& diagnostics, int attempts) {
  std::string out = "{\"error\":\"parse_failure\"";
  out += ",\"attempts\":" + std::to_string(attempts);
  out += ",\"diagnostics\":[";
  for (std::size_t i = 0; i < diagnostics.size(); ++i) {
    const Violation& v = diagnostics[i];
    if (i) out += ",";
    out += "{\"message\":\"" + json_escape(v.message) + "\",\"path\":\"" +
           json_escape(v.path) + "\",\"rule\":\"" + json_escape(v.rule) + "\"}";
  }
  out += "],\"query\":\"" + json_escape(query) + "\"";
  return out + ",\"version\":1}\n";
}

}  // namespace wayplan
