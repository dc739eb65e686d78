#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wayplan/poi.hpp"
#include "wayplan/search.hpp"

namespace wayplan {

enum class TaskKind { Special, Poi, OrderStops, PathSegment, Verify };

struct SubTask {
  std::string id;  // e.g. "special:0", "poi:1", "path:2"
  TaskKind kind = TaskKind::PathSegment;
  int payload_index = -1;  // index into the intent's list for the kind
  std::vector<std::string> deps;
};

// Tasks grouped into layers; tasks within a layer have no mutual
// dependencies and may run concurrently.
struct Plan {
  std::vector<std::vector<SubTask>> layers;
};

// Deterministic layered plan: modify-specials first, then POI lookups and
// info-specials (independent, same layer), stop ordering, one path task per
// segment, verification last.
Plan build_plan(const ParsedIntent& intent);

// Modify: merge the payload into the hard-constraint set (set semantics,
// idempotent) for all downstream path tasks. Info: append a note only.
void apply_special(const SpecialRequirement& req,
                   std::vector<HardPathConstraint>& hard_constraints,
                   std::vector<std::string>& notes);

struct PoiChoice {
  std::string requirement_id;            // SubTask id
  std::vector<PoiRecord> ranked;         // all admissible candidates, best first
  std::size_t selected = 0;              // index into ranked
};

struct RouteCandidate {
  std::vector<Stop> waypoints;  // start, chosen POIs in visit order, end
  std::vector<NodeId> path;     // full node sequence
  CostVector cost;
  std::vector<std::string> notes;
};

struct PlanFailure {
  std::string task_id;  // failing SubTask
  std::string message;
  std::vector<std::string> binding_constraints;
};

struct ExecutionResult {
  std::vector<RouteCandidate> candidates;  // ranked, best first
  std::vector<PoiChoice> choices;          // one per POI requirement
  std::vector<std::string> notes;
  SearchSpec spec;  // derived search parameters actually used
};

using ExecuteOutcome = std::variant<ExecutionResult, PlanFailure>;

// Runs the plan: resolve POIs (OR-groups pick the top-ranked member), order
// waypoints, plan each segment, and combine per-segment alternatives by
// aligned rank into at most k end-to-end candidates.
ExecuteOutcome execute_plan(const ParsedIntent& intent, const RouteGraph& graph,
                            const PoiCatalog& catalog, double epsilon = 0.1, int k = 3);

// Re-runs path assembly with an explicit POI selection per requirement
// (used by verifier re-planning). Selection indexes into PoiChoice.ranked.
ExecuteOutcome execute_with_selection(const ParsedIntent& intent, const RouteGraph& graph,
                                      const PoiCatalog& catalog,
                                      const std::vector<std::size_t>& selection,
                                      double epsilon = 0.1, int k = 3);

// Scalarized mode: every segment is planned with weighted single-objective
// search, yielding exactly one candidate.
ExecuteOutcome execute_scalarized(const ParsedIntent& intent, const RouteGraph& graph,
                                  const PoiCatalog& catalog);

}  // namespace wayplan
