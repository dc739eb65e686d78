#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wayplan/eval.hpp"
#include "wayplan/ioutil.hpp"
#include "wayplan/mapgen.hpp"
#include "wayplan/mapio.hpp"
#include "wayplan/render.hpp"
#include "wayplan/result.hpp"

namespace {

using namespace wayplan;

constexpr int kExitOk = 0;
constexpr int kExitBadFlags = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitParseFailure = 4;
constexpr int kExitTransport = 5;

struct MapgenArgs {
  int width = 50;
  int height = 30;
  std::uint64_t seed = 0;
  double block_fraction = 0.02;
  std::string out = "map.json";
  std::string pois_out;
};

int run_mapgen(const MapgenArgs& a) {
  if (a.width < 2 || a.height < 2) {
    std::cerr << "error: --width and --height must both be at least 2\n";
    return kExitBadFlags;
  }
  if (a.block_fraction < 0.0 || a.block_fraction > 0.05) {
    std::cerr << "error: --block-fraction must be in [0, 0.05]\n";
    return kExitBadFlags;
  }
  GridMapSpec spec;
  spec.width = a.width;
  spec.height = a.height;
  spec.seed = a.seed;
  spec.block_fraction = a.block_fraction;
  RouteGraph graph = generate_grid_map(spec);
  save_map_file(graph, a.out);
  if (!a.pois_out.empty()) {
    PoiCatalog catalog = generate_pois(graph, a.seed);
    write_file(a.pois_out, save_catalog(catalog));
  }
  return kExitOk;
}

struct RouteArgs {
  std::string map;
  std::string pois;
  std::string query;
  std::string intent_path;
  std::string parser = "rule";
  double epsilon = 0.1;
  int k = 3;
  std::string out = "route.json";
  RemoteConfig remote;
};

int run_route(const RouteArgs& a) {
  RouteGraph graph = load_map_file(a.map);
  PoiCatalog catalog;
  if (!a.pois.empty()) catalog = load_catalog(read_file(a.pois));

  ParseContext ctx;
  ctx.map_width = graph.width();
  ctx.map_height = graph.height();

  ParsedIntent intent;
  std::string query = a.query;
  if (!a.intent_path.empty()) {
    ValidationResult check = validate_intent(read_file(a.intent_path));
    if (!check.ok()) {
      write_file(a.out, serialize_parse_failure("", check.violations, 1));
      std::cerr << "error: intent file failed validation\n";
      return kExitParseFailure;
    }
    intent = *check.intent;
  } else {
    ParseOutcome outcome;
    if (a.parser == "rule") {
      outcome = parse_rule(query, ctx);
    } else {
      try {
        outcome = parse_remote(query, a.remote, ctx);
      } catch (const ParserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
      }
    }
    if (!outcome.schema_valid) {
      write_file(a.out, serialize_parse_failure(query, outcome.diagnostics, outcome.attempts));
      std::cerr << "error: query could not be parsed into a valid intent\n";
      return kExitParseFailure;
    }
    intent = *outcome.intent;
  }

  ExecuteOutcome exec = execute_plan(intent, graph, catalog, a.epsilon, a.k);
  if (const auto* fail = std::get_if<PlanFailure>(&exec)) {
    write_file(a.out, serialize_plan_failure(query, *fail));
    std::cerr << "error: plan infeasible at " << fail->task_id << ": " << fail->message << "\n";
    return kExitInfeasible;
  }
  ExecutionResult res = std::get<ExecutionResult>(exec);

  RouteResult result;
  result.query = query;
  result.intent = intent;
  result.candidates = res.candidates;
  result.notes = res.notes;
  for (const GlobalConstraint& g : intent.globals) {
    if (g.metric == GlobalMetric::TotalTime) {
      result.notes.push_back("total_time assumes unit speed (placeholder model)");
      break;
    }
  }

  VerifierConfig vcfg;
  for (const RouteCandidate& c : result.candidates) {
    result.verdicts.push_back(check_globals(c, intent.globals, catalog, vcfg));
  }

  // Repair the recommended candidate if it violates a global constraint.
  bool feasible_top = true;
  if (!result.candidates.empty() &&
      result.verdicts[0].status == VerdictStatus::Infeasible) {
    ReplanFn replan = [&](const std::vector<std::size_t>& sel)
        -> std::optional<RouteCandidate> {
      ExecuteOutcome again = execute_with_selection(intent, graph, catalog, sel, a.epsilon, 1);
      const auto* ok = std::get_if<ExecutionResult>(&again);
      if (!ok || ok->candidates.empty()) return std::nullopt;
      return ok->candidates.front();
    };
    RelaxOutcome fixed = relax_or_replan(result.candidates[0], result.verdicts[0], intent,
                                         catalog, res.choices, replan, vcfg);
    if (fixed.revised) result.candidates[0] = *fixed.revised;
    result.verdicts[0] = fixed.verdict;
    feasible_top = fixed.verdict.status != VerdictStatus::Infeasible;
  }
  result.rationales = explain(result.candidates);

  write_file(a.out, serialize_result(result));
  if (!feasible_top) {
    std::cerr << "error: no candidate satisfies the global constraints\n";
    return kExitInfeasible;
  }
  return kExitOk;
}

struct RenderArgs {
  std::string map;
  std::string route;
  std::string pois;
  std::string attr = "toll";
  std::string format = "svg";
  std::string out = "map.svg";
};

int run_render(const RenderArgs& a) {
  auto attr = objective_from_name(a.attr);
  if (!attr) {
    std::cerr << "error: unknown attribute '" << a.attr << "'\n";
    return kExitBadFlags;
  }
  RouteGraph graph = load_map_file(a.map);
  PoiCatalog catalog;
  if (!a.pois.empty()) catalog = load_catalog(read_file(a.pois));

  std::vector<NodeId> path;
  std::vector<Stop> waypoints;
  if (!a.route.empty()) {
    nlohmann::json doc = nlohmann::json::parse(read_file(a.route));
    if (doc.contains("candidates") && !doc["candidates"].empty()) {
      std::size_t chosen = doc.value("chosen", 0);
      const auto& cand = doc["candidates"].at(chosen);
      for (const auto& n : cand.at("path")) path.push_back(n.get<NodeId>());
      for (const auto& w : cand.at("waypoints")) {
        waypoints.push_back(Stop{w.at("node").get<NodeId>(),
                                 w.at("poi_id").get<std::string>(), std::nullopt});
      }
    }
  }
  const PoiCatalog* cat = a.pois.empty() ? nullptr : &catalog;
  if (a.format == "geojson") {
    write_file(a.out, render_geojson(graph, path, waypoints, cat));
  } else {
    write_file(a.out, render_svg(graph, *attr, path, waypoints, cat));
  }
  return kExitOk;
}

struct EvalArgs {
  std::string queries;
  std::string parser = "rule";
  std::string report;
  RemoteConfig remote;
};

int run_eval(const EvalArgs& a) {
  std::vector<BenchQuery> corpus = load_corpus(read_file(a.queries));
  if (corpus.empty()) {
    std::cerr << "error: empty corpus\n";
    return kExitBadFlags;
  }
  std::vector<QueryScore> scores;
  std::vector<std::pair<std::string, QueryScore>> per_query;
  for (const BenchQuery& q : corpus) {
    ParseOutcome outcome;
    if (a.parser == "rule") {
      outcome = parse_rule(q.text);
    } else {
      try {
        outcome = parse_remote(q.text, a.remote, ParseContext{});
      } catch (const ParserError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransport;
      }
    }
    QueryScore s = score_parse(outcome, q.gold);
    scores.push_back(s);
    per_query.emplace_back(q.id, s);
  }
  ParseScore agg = aggregate(scores);
  std::cout << score_report_text(agg);
  if (!a.report.empty()) write_file(a.report, score_report_json(agg, per_query));
  return kExitOk;
}

struct ScenarioArgs {
  std::string map;
  std::string pois;
  std::string scenarios;
  std::string out;
};

int run_scenarios(const ScenarioArgs& a) {
  RouteGraph graph = load_map_file(a.map);
  PoiCatalog catalog;
  if (!a.pois.empty()) catalog = load_catalog(read_file(a.pois));

  std::vector<std::pair<std::string, ParsedIntent>> scenarios;
  nlohmann::json doc = nlohmann::json::parse(read_file(a.scenarios));
  for (const auto& entry : doc) {
    ValidationResult check = validate_intent(entry.at("intent").dump());
    if (!check.ok()) {
      std::cerr << "error: scenario '" << entry.value("name", "?")
                << "' has an invalid intent\n";
      return kExitParseFailure;
    }
    scenarios.emplace_back(entry.at("name").get<std::string>(), *check.intent);
  }
  std::vector<ScenarioRow> rows = scenario_table(graph, catalog, scenarios);
  std::cout << scenario_text(rows);
  if (!a.out.empty()) write_file(a.out, scenario_csv(rows));
  return kExitOk;
}

void add_remote_flags(CLI::App* cmd, RemoteConfig& remote) {
  cmd->add_option("--endpoint", remote.endpoint, "Chat-completions base URL");
  cmd->add_option("--model", remote.model, "Remote model name");
  cmd->add_option("--api-key-env", remote.api_key_env, "Env var holding the API key");
  cmd->add_option("--retry-budget", remote.retry_budget, "Remote parse attempts");
  cmd->add_option("--transcript", remote.transcript_path, "JSONL transcript log");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wayplan: constraint-aware route planning and benchmarking"};
  app.require_subcommand(1);

  MapgenArgs mg;
  CLI::App* mapgen = app.add_subcommand("mapgen", "Generate a grid map (and POI catalog)");
  mapgen->add_option("--width", mg.width, "Grid width");
  mapgen->add_option("--height", mg.height, "Grid height");
  mapgen->add_option("--seed", mg.seed, "Generation seed");
  mapgen->add_option("--block-fraction", mg.block_fraction, "Fraction of blocked edges");
  mapgen->add_option("--out", mg.out, "Map output path");
  mapgen->add_option("--pois-out", mg.pois_out, "POI catalog output path");

  RouteArgs rt;
  CLI::App* route = app.add_subcommand("route", "Plan routes for a query or intent");
  route->add_option("--map", rt.map, "Map file")->required();
  route->add_option("--pois", rt.pois, "POI catalog file");
  route->add_option("--query", rt.query, "Natural-language query");
  route->add_option("--intent", rt.intent_path, "Intent JSON file (bypasses the parser)");
  route->add_option("--parser", rt.parser, "rule | remote")
      ->check(CLI::IsMember({"rule", "remote"}));
  route->add_option("--epsilon", rt.epsilon, "Pareto approximation factor");
  route->add_option("--k", rt.k, "Number of candidates");
  route->add_option("--out", rt.out, "Result output path");
  add_remote_flags(route, rt.remote);

  RenderArgs rd;
  CLI::App* render = app.add_subcommand("render", "Render a map heatmap with a route overlay");
  render->add_option("--map", rd.map, "Map file")->required();
  render->add_option("--route", rd.route, "Route result file");
  render->add_option("--pois", rd.pois, "POI catalog file");
  render->add_option("--attr", rd.attr, "Attribute to shade");
  render->add_option("--format", rd.format, "svg | geojson")
      ->check(CLI::IsMember({"svg", "geojson"}));
  render->add_option("--out", rd.out, "Output path");

  EvalArgs ev;
  CLI::App* evalc = app.add_subcommand("eval", "Score a parser against a query corpus");
  evalc->add_option("--queries", ev.queries, "JSONL corpus")->required();
  evalc->add_option("--parser", ev.parser, "rule | remote")
      ->check(CLI::IsMember({"rule", "remote"}));
  evalc->add_option("--report", ev.report, "JSON report output path");
  add_remote_flags(evalc, ev.remote);

  ScenarioArgs sc;
  CLI::App* scen = app.add_subcommand("scenarios", "Cost table across preference scenarios");
  scen->add_option("--map", sc.map, "Map file")->required();
  scen->add_option("--pois", sc.pois, "POI catalog file");
  scen->add_option("--scenarios", sc.scenarios, "Scenario definition JSON")->required();
  scen->add_option("--out", sc.out, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadFlags;
  }

  if (route->parsed() && rt.query.empty() == rt.intent_path.empty()) {
    std::cerr << "error: exactly one of --query / --intent is required\n";
    return kExitBadFlags;
  }

  try {
    if (mapgen->parsed()) return run_mapgen(mg);
    if (route->parsed()) return run_route(rt);
    if (render->parsed()) return run_render(rd);
    if (evalc->parsed()) return run_eval(ev);
    if (scen->parsed()) return run_scenarios(sc);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadFlags;
  }
  return kExitOk;
}
