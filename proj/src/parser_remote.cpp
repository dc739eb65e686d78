#include <cstdlib>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "wayplan/parser.hpp"

namespace wayplan {

namespace {

using nlohmann::json;

std::string schema_description() {
  return R"(Output a single JSON object with exactly these fields:
  "version": 1
  "start": {"x": int, "y": int}
  "end": {"x": int, "y": int}
  "poi_stops": array of {"category": one of restaurant|coffee_shop|gym|park,
      "filters": array of {"field","op" (eq|ge|le|contains|open_at),"value"},
      optional "alternatives" (array of the same shape, pick-one groups),
      optional "fixed_position": int}
  "hard_constraints": array of {"kind": avoid_attr_above|require_attr_below,
      "attribute": dist|scenic|energy|danger|slope|toll, "threshold": number in [0,1]}
      or {"kind": "forbid_edges", "edges": [[u,v],...]}
  "soft_prefs": object mapping features (scenic, danger, energy, slope, toll, dist)
      to 0, 0.5 or 1. Omit unmentioned features.
  "specials": array of {"topic","mode": info|modify, "note" (info) or "constraint" (modify)}
  "globals": array of {"metric": total_dist|total_time|total_budget,
      "threshold": positive number, "critical": bool}
Preference scale: 1 = strong requirement, 0.5 = moderate preference, 0 = unmentioned.)";
}

std::string instructions() {
  return R"(Step 1: Extract route preferences (soft_prefs). Identify abstract
features the user mentions, relate them to the cost attributes, and assign
intensity on the 0 / 0.5 / 1 scale.
Step 2: Extract POI stops in visit order. "X then Y" fixes the order;
"X or Y" forms one stop with alternatives.
Step 3: Attach attribute filters to each stop using the POI schema below.
Restaurants: cuisine, rating, average_cost, is_vegetarian_friendly, opening_hours.
Coffee shops: is_work_friendly, average_cost, rating, opening_hours.
Gyms: rating, average_cost, has_swimming_pool, opening_hours.
Parks: has_entry_fee, rating, opening_hours.
Step 4: Record global limits (budget, total distance, total time) and any
special requirements (weather lookups, road closures).
Output ONLY the raw JSON object. Do not add explanations or markdown.)";
}

std::string few_shot() {
  return R"(Example request: "Route me from (2,3) to (40,20). I'd like to stop at an
Italian restaurant rated at least 4.0. I must avoid tolls."
Example output:
{"end":{"x":40,"y":20},"globals":[],"hard_constraints":[],"poi_stops":[{"category":"restaurant","filters":[{"field":"cuisine","op":"eq","value":"Italian"},{"field":"rating","op":"ge","value":4.0}]}],"soft_prefs":{"toll":1},"specials":[],"start":{"x":2,"y":3},"version":1}

Example request: "Shortest route from (0,0) to (10,10), but check the weather first."
Example output:
{"end":{"x":10,"y":10},"globals":[],"hard_constraints":[],"poi_stops":[],"soft_prefs":{},"specials":[{"mode":"info","note":"check current weather conditions","topic":"weather"}],"start":{"x":0,"y":0},"version":1})";
}

std::string build_system_prompt(const ParseContext& ctx) {
  std::ostringstream out;
  out << "You are a highly precise structured data extraction agent. Convert the "
         "user's travel request into a single valid JSON object.\n\n<CONTEXT>\nThe map is a "
      << ctx.map_width << "x" << ctx.map_height
      << " grid with 8-directional movement. Coordinates are (x,y) grid cells.\n</CONTEXT>\n\n"
      << "<SCHEMA_AND_RULES>\n" << schema_description() << "\n</SCHEMA_AND_RULES>\n\n"
      << "<INSTRUCTIONS>\n" << instructions() << "\n</INSTRUCTIONS>\n\n"
      << "<FEW_SHOT_EXAMPLES>\n" << few_shot() << "\n</FEW_SHOT_EXAMPLES>";
  return out.str();
}

// Models often wrap JSON in code fences; strip them before validating.
std::string strip_fences(const std::string& s) {
  std::size_t b = s.find('{');
  std::size_t e = s.rfind('}');
  if (b == std::string::npos || e == std::string::npos || e < b) return s;
  return s.substr(b, e - b + 1);
}

void log_transcript(const RemoteConfig& cfg, const json& request, const json& response) {
  if (cfg.transcript_path.empty()) return;
  std::ofstream out(cfg.transcript_path, std::ios::app);
  json line;
  line["request"] = request;
  line["response"] = response;
  out << line.dump() << "\n";
}

}  // namespace

ParseOutcome parse_remote(const std::string& query, const RemoteConfig& config,
                          const ParseContext& context) {
  if (config.retry_budget < 1) throw ParserError("retry budget must be >= 1");
  httplib::Client client(config.endpoint);
  client.set_read_timeout(config.timeout_seconds, 0);
  client.set_connection_timeout(config.timeout_seconds, 0);

  httplib::Headers headers;
  if (const char* key = std::getenv(config.api_key_env.c_str()); key && *key) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  json messages = json::array();
  messages.push_back({{"role", "system"}, {"content", build_system_prompt(context)}});
  messages.push_back({{"role", "user"}, {"content", query}});

  ParseOutcome outcome;
  outcome.attempts = 0;
  for (int attempt = 0; attempt < config.retry_budget; ++attempt) {
    ++outcome.attempts;
    json request = {{"model", config.model},
                    {"temperature", config.temperature},
                    {"messages", messages}};
    auto res = client.Post(config.path, headers, request.dump(), "application/json");
    if (!res || res->status != 200) {
      std::string detail = res ? "HTTP " + std::to_string(res->status)
                               : "transport error: " + httplib::to_string(res.error());
      if (attempt + 1 == config.retry_budget) {
        throw ParserError("remote parser failed after " + std::to_string(outcome.attempts) +
                          " attempts (" + detail + ")");
      }
      continue;
    }

    std::string content;
    try {
      json body = json::parse(res->body);
      log_transcript(config, request, body);
      content = body.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
      outcome.diagnostics = {{"", "response", std::string("unexpected response shape: ") +
                                                  e.what()}};
      continue;
    }

    ValidationResult check = validate_intent(strip_fences(content));
    if (check.ok()) {
      outcome.intent = std::move(check.intent);
      outcome.schema_valid = true;
      outcome.diagnostics.clear();
      return outcome;
    }
    outcome.diagnostics = check.violations;

    // Feed the violations back verbatim and re-prompt.
    std::ostringstream repair;
    repair << "Your previous output failed schema validation. Violations:\n";
    for (const Violation& v : check.violations) {
      repair << "- " << (v.path.empty() ? "<document>" : v.path) << ": " << v.message << "\n";
    }
    repair << "Emit a corrected JSON object only.";
    messages.push_back({{"role", "assistant"}, {"content", content}});
    messages.push_back({{"role", "user"}, {"content", repair.str()}});
  }
  return outcome;  // budget exhausted, diagnostics preserved
}

}  // namespace wayplan
