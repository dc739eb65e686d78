#include "wayplan/orchestrator.hpp"

#include <algorithm>

#include "wayplan/intent.hpp"

namespace wayplan {

namespace {

bool constraint_present(const std::vector<HardPathConstraint>& set,
                        const HardPathConstraint& hc) {
  return std::find(set.begin(), set.end(), hc) != set.end();
}

std::vector<PoiRecord> resolve_candidates(const PoiRequirement& req, const PoiCatalog& catalog,
                                          const RouteGraph& graph, NodeId start, NodeId end) {
  std::vector<PoiRecord> pool;
  if (req.alternatives.empty()) {
    pool = filter_pois(catalog, req.category, req.filters);
  } else {
    // OR-group: candidates from every branch compete in one ranking.
    for (const PoiRequirement& alt : req.alternatives) {
      for (PoiRecord& p : filter_pois(catalog, alt.category, alt.filters)) {
        pool.push_back(std::move(p));
      }
    }
  }
  return rank_pois(std::move(pool), graph, start, end);
}

}  // namespace

Plan build_plan(const ParsedIntent& intent) {
  Plan plan;
  std::vector<SubTask> modify_layer;
  std::vector<SubTask> lookup_layer;
  for (std::size_t i = 0; i < intent.specials.size(); ++i) {
    SubTask t;
    t.id = "special:" + std::to_string(i);
    t.kind = TaskKind::Special;
    t.payload_index = static_cast<int>(i);
    // Road-block style constraint edits must land before any path task;
    // info lookups are independent and run alongside POI search.
    (intent.specials[i].mode == SpecialMode::Modify ? modify_layer : lookup_layer)
        .push_back(std::move(t));
  }
  for (std::size_t i = 0; i < intent.poi_stops.size(); ++i) {
    SubTask t;
    t.id = "poi:" + std::to_string(i);
    t.kind = TaskKind::Poi;
    t.payload_index = static_cast<int>(i);
    for (const SubTask& dep : modify_layer) t.deps.push_back(dep.id);
    lookup_layer.push_back(std::move(t));
  }
  if (!modify_layer.empty()) plan.layers.push_back(std::move(modify_layer));
  if (!lookup_layer.empty()) plan.layers.push_back(std::move(lookup_layer));

  auto dep_ids = [&](TaskKind kind) {
    std::vector<std::string> ids;
    for (const auto& layer : plan.layers) {
      for (const SubTask& t : layer) {
        if (t.kind == kind) ids.push_back(t.id);
      }
    }
    return ids;
  };

  std::size_t segments = intent.poi_stops.size() + 1;
  if (!intent.poi_stops.empty()) {
    SubTask order;
    order.id = "order_stops";
    order.kind = TaskKind::OrderStops;
    order.deps = dep_ids(TaskKind::Poi);
    plan.layers.push_back({std::move(order)});
  }
  std::vector<SubTask> path_layer;
  for (std::size_t i = 0; i < segments; ++i) {
    SubTask t;
    t.id = "path:" + std::to_string(i);
    t.kind = TaskKind::PathSegment;
    t.payload_index = static_cast<int>(i);
    if (!intent.poi_stops.empty()) t.deps.push_back("order_stops");
    for (const std::string& id : dep_ids(TaskKind::Special)) t.deps.push_back(id);
    path_layer.push_back(std::move(t));
  }
  plan.layers.push_back(std::move(path_layer));

  SubTask verify;
  verify.id = "verify";
  verify.kind = TaskKind::Verify;
  for (std::size_t i = 0; i < segments; ++i) {
    verify.deps.push_back("path:" + std::to_string(i));
  }
  plan.layers.push_back({std::move(verify)});
  return plan;
}

void apply_special(const SpecialRequirement& req,
                   std::vector<HardPathConstraint>& hard_constraints,
                   std::vector<std::string>& notes) {
  if (req.mode == SpecialMode::Info) {
    notes.push_back(req.topic + ": " + req.note);
    return;
  }
  if (!req.constraint) {
    throw PoiError("modify special '" + req.topic + "' carries no constraint payload");
  }
  if (!constraint_present(hard_constraints, *req.constraint)) {
    hard_constraints.push_back(*req.constraint);
  }
}

static ExecuteOutcome run_pipeline(const ParsedIntent& intent, const RouteGraph& graph,
                                   const PoiCatalog& catalog,
                                   const std::vector<std::size_t>* selection, double epsilon,
                                   int k, bool scalarized = false) {
  ExecutionResult result;

  SearchDerivation derived = derive_search_params(intent.soft_prefs);
  SearchSpec spec;
  spec.active = derived.active;
  spec.weights = derived.weights;
  spec.epsilon = epsilon;
  spec.k = k;
  spec.hard = intent.hard_constraints;
  for (const HardPathConstraint& hc : derived.implied) {
    if (!constraint_present(spec.hard, hc)) spec.hard.push_back(hc);
  }
  for (const SpecialRequirement& sr : intent.specials) {
    apply_special(sr, spec.hard, result.notes);
  }

  NodeId start = graph.node_at(intent.start.x, intent.start.y);
  NodeId end = graph.node_at(intent.end.x, intent.end.y);

  // POI resolution.
  std::vector<Stop> stops;
  for (std::size_t i = 0; i < intent.poi_stops.size(); ++i) {
    const PoiRequirement& req = intent.poi_stops[i];
    PoiChoice choice;
    choice.requirement_id = "poi:" + std::to_string(i);
    choice.ranked = resolve_candidates(req, catalog, graph, start, end);
    if (choice.ranked.empty()) {
      return PlanFailure{choice.requirement_id,
                         "no POI in the catalog satisfies requirement " + std::to_string(i),
                         {}};
    }
    choice.selected = selection ? (*selection)[i] : 0;
    if (choice.selected >= choice.ranked.size()) {
      return PlanFailure{choice.requirement_id, "requested POI alternative exhausted", {}};
    }
    const PoiRecord& picked = choice.ranked[choice.selected];
    stops.push_back(Stop{picked.node, picked.id, req.fixed_position});
    result.choices.push_back(std::move(choice));
  }

  std::vector<Stop> waypoints = order_stops(graph, start, end, stops);

  // Segment-wise planning.
  std::size_t segments = waypoints.size() - 1;
  std::vector<std::vector<PathResult>> per_segment(segments);
  for (std::size_t s = 0; s < segments; ++s) {
    NodeId a = waypoints[s].node;
    NodeId b = waypoints[s + 1].node;
    std::string task_id = "path:" + std::to_string(s);
    if (a == b) {
      per_segment[s] = {PathResult{{a}, CostVector{}}};
      continue;
    }
    if (scalarized || spec.active.size() < 2) {
      auto res = shortest_path(graph, a, b, spec);
      if (auto* inf = std::get_if<Infeasible>(&res)) {
        return PlanFailure{task_id, inf->message, inf->binding_constraints};
      }
      per_segment[s] = {std::get<PathResult>(res)};
    } else {
      auto res = pareto_search(graph, a, b, spec);
      if (auto* inf = std::get_if<Infeasible>(&res)) {
        return PlanFailure{task_id, inf->message, inf->binding_constraints};
      }
      per_segment[s] = top_k(std::get<ParetoSet>(res), spec);
    }
  }

  // Combine by aligned rank: i-th best of every segment forms candidate i.
  std::size_t count = static_cast<std::size_t>(k);
  for (const auto& seg : per_segment) count = std::min(count, seg.size());
  for (std::size_t i = 0; i < count; ++i) {
    RouteCandidate cand;
    cand.waypoints = waypoints;
    cand.notes = result.notes;
    for (std::size_t s = 0; s < segments; ++s) {
      const PathResult& part = per_segment[s][i];
      if (cand.path.empty()) {
        cand.path = part.path;
      } else {
        cand.path.insert(cand.path.end(), part.path.begin() + 1, part.path.end());
      }
      cand.cost += part.cost;
    }
    result.candidates.push_back(std::move(cand));
  }
  result.spec = spec;
  return result;
}

ExecuteOutcome execute_plan(const ParsedIntent& intent, const RouteGraph& graph,
                            const PoiCatalog& catalog, double epsilon, int k) {
  return run_pipeline(intent, graph, catalog, nullptr, epsilon, k);
}

ExecuteOutcome execute_with_selection(const ParsedIntent& intent, const RouteGraph& graph,
                                      const PoiCatalog& catalog,
                                      const std::vector<std::size_t>& selection, double epsilon,
                                      int k) {
  return run_pipeline(intent, graph, catalog, &selection, epsilon, k);
}

ExecuteOutcome execute_scalarized(const ParsedIntent& intent, const RouteGraph& graph,
                                  const PoiCatalog& catalog) {
  return run_pipeline(intent, graph, catalog, nullptr, 0.0, 1, /*scalarized=*/true);
}

}  // namespace wayplan
