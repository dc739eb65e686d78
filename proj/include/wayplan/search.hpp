#pragma once

#include <set>
#include <variant>
#include <vector>

#include "wayplan/graph.hpp"
#include "wayplan/intent.hpp"

namespace wayplan {

struct SearchSpec {
  std::set<Objective> active = {Objective::Dist};
  std::array<double, kNumObjectives> weights = {1, 0, 0, 0, 0, 0};
  double epsilon = 0.1;
  std::vector<HardPathConstraint> hard;
  int k = 3;
  std::size_t label_budget = 200000;
};

struct PathResult {
  std::vector<NodeId> path;
  CostVector cost;  // full 6-dimensional sum
};

struct Infeasible {
  std::string message;
  std::vector<std::string> binding_constraints;
};

using ShortestPathResult = std::variant<PathResult, Infeasible>;

struct ParetoSet {
  std::vector<PathResult> solutions;  // mutually non-dominated cost vectors
};

using ParetoSearchResult = std::variant<ParetoSet, Infeasible>;

// Component-wise sum of edge cost vectors along a node sequence.
// Throws GraphError on non-adjacent consecutive nodes or a blocked edge.
CostVector path_cost(const RouteGraph& graph, const std::vector<NodeId>& path);

// Literal implementation of the epsilon-dominance relation:
// true iff forall j in A: x_j <= (1+eps) y_j and exists k: x_k < (1+eps) y_k.
bool eps_dominates(const CostVector& x, const CostVector& y,
                   const std::set<Objective>& active, double epsilon);

bool edge_allowed(const Edge& e, const std::vector<HardPathConstraint>& hard);

// Weighted A* over the scalarized cost; heuristic is w_dist * octile in grid
// mode (admissible: only the dist term has a usable lower bound), zero in
// free mode.
ShortestPathResult shortest_path(const RouteGraph& graph, NodeId start, NodeId end,
                                 const SearchSpec& spec);

// Label-setting search over the active objectives. Per-node frontiers use
// exact dominance; epsilon prunes against accepted goal costs and filters
// the final set, which preserves the one-step epsilon-cover guarantee.
ParetoSearchResult pareto_search(const RouteGraph& graph, NodeId start, NodeId end,
                                 const SearchSpec& spec);

double scalarized(const CostVector& c, const SearchSpec& spec);

// Ranked ascending by scalarized score; ties by dist, then lexicographic
// cost. Returns at most k solutions.
std::vector<PathResult> top_k(const ParetoSet& pset, const SearchSpec& spec);

}  // namespace wayplan
