#pragma once

// Brute-force reference implementations, deliberately independent of the
// library's search code. Only usable at toy scale.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "wayplan/search.hpp"

namespace oracle {

using namespace wayplan;

inline bool oracle_edge_allowed(const Edge& e, const std::vector<HardPathConstraint>& hard) {
  if (!e.passable) return false;
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

// Classical weak Pareto dominance over the active set.
inline bool dominates(const CostVector& x, const CostVector& y,
                      const std::set<Objective>& active) {
  bool strict = false;
  for (Objective o : active) {
    if (x[o] > y[o]) return false;
    if (x[o] < y[o]) strict = true;
  }
  return strict;
}

// All simple paths from start to end, by exhaustive DFS.
inline void all_simple_paths_rec(const RouteGraph& g, NodeId cur, NodeId end,
                                 const std::vector<HardPathConstraint>& hard,
                                 std::vector<bool>& used, std::vector<NodeId>& path,
                                 CostVector cost, std::vector<CostVector>& out) {
  if (cur == end) {
    out.push_back(cost);
    return;
  }
  for (const Edge& e : g.edges()) {
    NodeId nxt = -1;
    if (e.u == cur) nxt = e.v;
    else if (e.v == cur) nxt = e.u;
    else continue;
    if (used[nxt] || !oracle_edge_allowed(e, hard)) continue;
    used[nxt] = true;
    path.push_back(nxt);
    all_simple_paths_rec(g, nxt, end, hard, used, path, cost + e.cost, out);
    path.pop_back();
    used[nxt] = false;
  }
}

// Non-dominated cost vectors over every simple start-end path (duplicates
// collapsed).
inline std::vector<CostVector> pareto_oracle(const RouteGraph& g, NodeId start, NodeId end,
                                             const std::set<Objective>& active,
                                             const std::vector<HardPathConstraint>& hard = {}) {
  std::vector<CostVector> costs;
  std::vector<bool> used(g.node_count(), false);
  std::vector<NodeId> path{start};
  used[start] = true;
  all_simple_paths_rec(g, start, end, hard, used, path, CostVector{}, costs);

  std::vector<CostVector> front;
  for (const CostVector& c : costs) {
    bool dominated = false;
    for (const CostVector& other : costs) {
      if (dominates(other, c, active)) {
        dominated = true;
        break;
      }
    }
    if (dominated) continue;
    if (std::find(front.begin(), front.end(), c) == front.end()) front.push_back(c);
  }
  auto key = [&](const CostVector& c) {
    std::vector<double> k;
    for (std::size_t i = 0; i < kNumObjectives; ++i) k.push_back(c.at(i));
    return k;
  };
  std::sort(front.begin(), front.end(),
            [&](const CostVector& a, const CostVector& b) { return key(a) < key(b); });
  return front;
}

// Textbook O(V^2) Dijkstra over the scalarized edge weight.
inline std::optional<double> dijkstra_oracle(const RouteGraph& g, NodeId start, NodeId end,
                                             const std::array<double, kNumObjectives>& weights,
                                             const std::vector<HardPathConstraint>& hard = {}) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.node_count(), inf);
  std::vector<bool> done(g.node_count(), false);
  dist[start] = 0.0;
  for (std::size_t iter = 0; iter < g.node_count(); ++iter) {
    NodeId best = -1;
    double best_d = inf;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      if (!done[i] && dist[i] < best_d) {
        best_d = dist[i];
        best = static_cast<NodeId>(i);
      }
    }
    if (best < 0) break;
    done[best] = true;
    if (best == end) return dist[end];
    for (const Edge& e : g.edges()) {
      NodeId nxt = -1;
      if (e.u == best) nxt = e.v;
      else if (e.v == best) nxt = e.u;
      else continue;
      if (!oracle_edge_allowed(e, hard)) continue;
      double w = 0.0;
      for (std::size_t j = 0; j < kNumObjectives; ++j) w += weights[j] * e.cost.at(j);
      if (dist[best] + w < dist[nxt]) dist[nxt] = dist[best] + w;
    }
  }
  if (dist[end] == inf) return std::nullopt;
  return dist[end];
}

inline double octile_between(const RouteGraph& g, NodeId a, NodeId b) {
  const Point& pa = g.node(a).coord;
  const Point& pb = g.node(b).coord;
  double dx = std::abs(pa.x - pb.x);
  double dy = std::abs(pa.y - pb.y);
  return std::max(dx, dy) + (std::sqrt(2.0) - 1.0) * std::min(dx, dy);
}

// Minimum octile tour cost over every admissible stop permutation.
inline double best_order_oracle(const RouteGraph& g, NodeId start, NodeId end,
                                const std::vector<Stop>& stops) {
  std::vector<std::size_t> idx(stops.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end());
  double best = std::numeric_limits<double>::infinity();
  do {
    bool ok = true;
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      const auto& fp = stops[idx[pos]].fixed_position;
      if (fp && static_cast<std::size_t>(*fp) != pos) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    double total = 0.0;
    NodeId prev = start;
    for (std::size_t pos = 0; pos < idx.size(); ++pos) {
      total += octile_between(g, prev, stops[idx[pos]].node);
      prev = stops[idx[pos]].node;
    }
    total += octile_between(g, prev, end);
    best = std::min(best, total);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

}  // namespace oracle
