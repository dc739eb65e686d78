#include "wayplan/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace wayplan {

namespace {

std::string describe_constraint(const HardPathConstraint& hc) {
  std::ostringstream out;
  switch (hc.kind) {
    case ConstraintKind::AvoidAttrAbove:
      out << "avoid_attr_above(" << objective_name(hc.attribute) << "," << hc.threshold << ")";
      break;
    case ConstraintKind::RequireAttrBelow:
      out << "require_attr_below(" << objective_name(hc.attribute) << "," << hc.threshold << ")";
      break;
    case ConstraintKind::ForbidEdges:
      out << "forbid_edges(" << hc.edges.size() << " edges)";
      break;
  }
  return out.str();
}

bool reachable(const RouteGraph& graph, NodeId start, NodeId end,
               const std::vector<HardPathConstraint>& hard) {
  std::vector<char> seen(graph.node_count(), 0);
  std::vector<NodeId> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    if (cur == end) return true;
    for (const Neighbor& nb : graph.neighbors(cur)) {
      const Edge& e = graph.edges()[static_cast<std::size_t>(nb.edge)];
      if (!edge_allowed(e, hard)) continue;
      if (!seen[static_cast<std::size_t>(nb.node)]) {
        seen[static_cast<std::size_t>(nb.node)] = 1;
        stack.push_back(nb.node);
      }
    }
  }
  return false;
}

// Names every constraint whose individual removal restores reachability.
Infeasible infeasibility_report(const RouteGraph& graph, NodeId start, NodeId end,
                                const std::vector<HardPathConstraint>& hard) {
  Infeasible inf;
  if (!reachable(graph, start, end, {})) {
    inf.message = "no passable path between start and end";
    return inf;
  }
  for (std::size_t i = 0; i < hard.size(); ++i) {
    std::vector<HardPathConstraint> without = hard;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    if (reachable(graph, start, end, without)) {
      inf.binding_constraints.push_back(describe_constraint(hard[i]));
    }
  }
  if (inf.binding_constraints.empty()) {
    // No single constraint is responsible; report the whole set.
    for (const HardPathConstraint& hc : hard) {
      inf.binding_constraints.push_back(describe_constraint(hc));
    }
  }
  inf.message = "start and end are disconnected under the hard constraints";
  return inf;
}

// x weakly dominates y on the active set (every component <=).
bool weakly_dominates(const CostVector& x, const CostVector& y,
                      const std::set<Objective>& active) {
  for (Objective o : active) {
    if (x[o] > y[o]) return false;
  }
  return true;
}

bool lex_less(const CostVector& a, const CostVector& b) {
  for (std::size_t i = 0; i < kNumObjectives; ++i) {
    if (a.at(i) != b.at(i)) return a.at(i) < b.at(i);
  }
  return false;
}

}  // namespace

CostVector path_cost(const RouteGraph& graph, const std::vector<NodeId>& path) {
  CostVector total;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto e = graph.edge_between(path[i], path[i + 1]);
    if (!e) {
      throw GraphError("path nodes " + std::to_string(path[i]) + " and " +
                       std::to_string(path[i + 1]) + " are not adjacent");
    }
    const Edge& edge = graph.edges()[static_cast<std::size_t>(*e)];
    if (!edge.passable) {
      throw GraphError("path uses blocked edge (" + std::to_string(edge.u) + "," +
                       std::to_string(edge.v) + ")");
    }
    total += edge.cost;
  }
  return total;
}

bool eps_dominates(const CostVector& x, const CostVector& y,
                   const std::set<Objective>& active, double epsilon) {
  bool strict = false;
  for (Objective o : active) {
    double bound = (1.0 + epsilon) * y[o];
    if (x[o] > bound) return false;
    if (x[o] < bound) strict = true;
  }
  return strict;
}

bool edge_allowed(const Edge& e, const std::vector<HardPathConstraint>& hard) {
  for (const HardPathConstraint& hc : hard) {
    switch (hc.kind) {
      case ConstraintKind::AvoidAttrAbove:
        if (e.cost[hc.attribute] > hc.threshold) return false;
        break;
      case ConstraintKind::RequireAttrBelow:
        if (e.cost[hc.attribute] >= hc.threshold) return false;
        break;
      case ConstraintKind::ForbidEdges:
        for (auto [u, v] : hc.edges) {
          if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) return false;
        }
        break;
    }
  }
  return true;
}

double scalarized(const CostVector& c, const SearchSpec& spec) {
  double s = 0.0;
  for (Objective o : spec.active) s += spec.weights[static_cast<std::size_t>(o)] * c[o];
  return s;
}

ShortestPathResult shortest_path(const RouteGraph& graph, NodeId start, NodeId end,
                                 const SearchSpec& spec) {
  if (!graph.has_node(start) || !graph.has_node(end)) {
    throw GraphError("unknown start or end node");
  }
  const double w_dist = spec.weights[static_cast<std::size_t>(Objective::Dist)];
  const bool grid = graph.mode() == MapMode::Grid;
  const Point goal = graph.node(end).coord;
  auto heuristic = [&](NodeId n) {
    return grid ? w_dist * octile(graph.node(n).coord, goal) : 0.0;
  };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(graph.node_count(), inf);
  std::vector<NodeId> parent(graph.node_count(), -1);
  std::vector<char> closed(graph.node_count(), 0);

  using Item = std::tuple<double, double, NodeId>;  // (f, g, node)
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> open;
  best[static_cast<std::size_t>(start)] = 0.0;
  open.emplace(heuristic(start), 0.0, start);

  while (!open.empty()) {
    auto [f, g, cur] = open.top();
    open.pop();
    if (closed[static_cast<std::size_t>(cur)]) continue;
    closed[static_cast<std::size_t>(cur)] = 1;
    if (cur == end) break;
    for (const Neighbor& nb : graph.neighbors(cur)) {
      const Edge& e = graph.edges()[static_cast<std::size_t>(nb.edge)];
      if (!edge_allowed(e, spec.hard)) continue;
      double ng = g + scalarized(e.cost, spec);
      std::size_t ni = static_cast<std::size_t>(nb.node);
      if (ng < best[ni]) {
        best[ni] = ng;
        parent[ni] = cur;
        open.emplace(ng + heuristic(nb.node), ng, nb.node);
      }
    }
  }

  if (!closed[static_cast<std::size_t>(end)] &&
      best[static_cast<std::size_t>(end)] == inf) {
    return infeasibility_report(graph, start, end, spec.hard);
  }

  std::vector<NodeId> path;
  for (NodeId cur = end; cur != -1; cur = parent[static_cast<std::size_t>(cur)]) {
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return PathResult{path, path_cost(graph, path)};
}

ParetoSearchResult pareto_search(const RouteGraph& graph, NodeId start, NodeId end,
                                 const SearchSpec& spec) {
  if (spec.active.size() < 2) {
    throw std::invalid_argument("pareto_search requires at least 2 active objectives");
  }
  if (!graph.has_node(start) || !graph.has_node(end)) {
    throw GraphError("unknown start or end node");
  }
  const double w_dist = spec.weights[static_cast<std::size_t>(Objective::Dist)];
  const bool grid = graph.mode() == MapMode::Grid;
  const Point goal = graph.node(end).coord;
  auto h_dist = [&](NodeId n) { return grid ? octile(graph.node(n).coord, goal) : 0.0; };

  struct Label {
    CostVector g;
    NodeId node;
    int parent;
    bool alive;
  };
  std::vector<Label> labels;
  std::vector<std::vector<int>> frontier(graph.node_count());
  // Heap ordered by scalarized f with dist-only lower bound; ties by
  // scalarized g then label id for determinism.
  using Item = std::tuple<double, double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> open;

  auto try_add = [&](CostVector g, NodeId node, int parent) {
    auto& front = frontier[static_cast<std::size_t>(node)];
    for (int id : front) {
      if (weakly_dominates(labels[id].g, g, spec.active)) return;
    }
    std::erase_if(front, [&](int id) {
      if (weakly_dominates(g, labels[id].g, spec.active)) {
        labels[id].alive = false;
        return true;
      }
      return false;
    });
    int id = static_cast<int>(labels.size());
    labels.push_back(Label{g, node, parent, true});
    front.push_back(id);
    if (node != end) {
      double gs = scalarized(g, spec);
      open.emplace(gs + w_dist * h_dist(node), gs, id);
    }
  };

  try_add(CostVector{}, start, -1);

  while (!open.empty()) {
    auto [f, gs, id] = open.top();
    open.pop();
    if (!labels[id].alive) continue;
    if (labels.size() > spec.label_budget) {
      return Infeasible{"frontier budget exceeded (" + std::to_string(spec.label_budget) +
                            " labels)",
                        {}};
    }
    const NodeId cur = labels[id].node;
    const CostVector g = labels[id].g;

    // Prune against accepted goal costs: any completion of this label is
    // epsilon-dominated by an existing solution.
    CostVector bound = g;
    bound[Objective::Dist] += h_dist(cur);
    bool pruned = false;
    for (int gid : frontier[static_cast<std::size_t>(end)]) {
      if (eps_dominates(labels[gid].g, bound, spec.active, spec.epsilon)) {
        pruned = true;
        break;
      }
    }
    if (pruned) continue;

    for (const Neighbor& nb : graph.neighbors(cur)) {
      const Edge& e = graph.edges()[static_cast<std::size_t>(nb.edge)];
      if (!edge_allowed(e, spec.hard)) continue;
      try_add(g + e.cost, nb.node, id);
    }
  }

  const auto& goal_front = frontier[static_cast<std::size_t>(end)];
  if (goal_front.empty()) {
    return infeasibility_report(graph, start, end, spec.hard);
  }

  std::vector<PathResult> all;
  for (int id : goal_front) {
    std::vector<NodeId> path;
    for (int cur = id; cur != -1; cur = labels[cur].parent) {
      path.push_back(labels[cur].node);
    }
    std::reverse(path.begin(), path.end());
    all.push_back(PathResult{std::move(path), labels[id].g});
  }
  std::sort(all.begin(), all.end(), [&](const PathResult& a, const PathResult& b) {
    double sa = scalarized(a.cost, spec);
    double sb = scalarized(b.cost, spec);
    if (sa != sb) return sa < sb;
    if (a.cost.dist() != b.cost.dist()) return a.cost.dist() < b.cost.dist();
    return lex_less(a.cost, b.cost);
  });

  // Final epsilon filter, skip-only: a solution is dropped exactly when an
  // already kept one epsilon-dominates it, so every dropped point stays
  // within one (1+eps) factor of a kept point.
  ParetoSet out;
  for (PathResult& sol : all) {
    bool covered = false;
    for (const PathResult& kept : out.solutions) {
      if (spec.epsilon > 0.0
              ? eps_dominates(kept.cost, sol.cost, spec.active, spec.epsilon)
              : weakly_dominates(kept.cost, sol.cost, spec.active)) {
        covered = true;
        break;
      }
    }
    if (!covered) out.solutions.push_back(std::move(sol));
  }
  return out;
}

std::vector<PathResult> top_k(const ParetoSet& pset, const SearchSpec& spec) {
  std::vector<PathResult> out = pset.solutions;
  std::sort(out.begin(), out.end(), [&](const PathResult& a, const PathResult& b) {
    double sa = scalarized(a.cost, spec);
    double sb = scalarized(b.cost, spec);
    if (sa != sb) return sa < sb;
    if (a.cost.dist() != b.cost.dist()) return a.cost.dist() < b.cost.dist();
    return lex_less(a.cost, b.cost);
  });
  if (static_cast<int>(out.size()) > spec.k) out.resize(static_cast<std::size_t>(spec.k));
  return out;
}

}  // namespace wayplan
