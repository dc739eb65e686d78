#pragma once

#include <vector>

#include "wayplan/mapgen.hpp"
#include "wayplan/rng.hpp"
#include "wayplan/search.hpp"

namespace fixtures {

using namespace wayplan;

// Two parallel two-hop routes with opposite scenic/dist trade-offs:
//   0 -1- 2 (dist 2, scenic 0.2)   0 -3- 2 (dist 3, scenic 0.02)
inline RouteGraph diamond() {
  std::vector<Node> nodes;
  for (int i = 0; i < 4; ++i) nodes.push_back(Node{i, Point{double(i), 0.0}});
  RouteGraph g = RouteGraph::make_free(std::move(nodes), 1);
  g.add_edge(0, 1, make_cost(1, 0.1, 0.1, 0.1, 0.1, 0.1));
  g.add_edge(1, 2, make_cost(1, 0.1, 0.1, 0.1, 0.1, 0.1));
  g.add_edge(0, 3, make_cost(1.5, 0.01, 0.1, 0.1, 0.1, 0.1));
  g.add_edge(3, 2, make_cost(1.5, 0.01, 0.1, 0.1, 0.1, 0.1));
  return g;
}

// Connected free-mode graph with random costs; spanning tree plus extras.
inline RouteGraph random_graph(std::uint64_t seed, int n, int extra_edges) {
  Rng rng(seed);
  std::vector<Node> nodes;
  for (int i = 0; i < n; ++i) {
    nodes.push_back(Node{i, Point{rng.uniform(0, 10), rng.uniform(0, 10)}});
  }
  RouteGraph g = RouteGraph::make_free(std::move(nodes), seed);
  auto random_cost = [&] {
    CostVector c;
    c[Objective::Dist] = rng.uniform(0.5, 2.0);
    for (std::size_t a = 1; a < kNumObjectives; ++a) c.at(a) = rng.uniform(0.0, 1.0);
    return c;
  };
  for (int i = 1; i < n; ++i) {
    g.add_edge(rng.uniform_int(0, i - 1), i, random_cost());
  }
  for (int e = 0; e < extra_edges; ++e) {
    NodeId u = rng.uniform_int(0, n - 1);
    NodeId v = rng.uniform_int(0, n - 1);
    if (u == v || g.edge_between(u, v)) continue;
    g.add_edge(u, v, random_cost());
  }
  return g;
}

// 10x6 grid whose central band has high scenic cost; a low-scenic corridor
// runs along the bottom rows.
inline RouteGraph scenic_corridor() {
  GridMapSpec spec;
  spec.width = 10;
  spec.height = 6;
  spec.seed = 7;
  spec.block_fraction = 0.0;
  CostZone zone;
  zone.attribute = Objective::Scenic;
  zone.level = ZoneLevel::High;
  zone.polygon = {Point{1.5, -0.5}, Point{7.5, -0.5}, Point{7.5, 3.5}, Point{1.5, 3.5}};
  spec.zones = {zone};
  return generate_grid_map(spec);
}

}  // namespace fixtures
