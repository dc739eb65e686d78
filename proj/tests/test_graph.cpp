#include <doctest.h>

#include "fixtures.hpp"
#include "wayplan/graph.hpp"

using namespace wayplan;

TEST_CASE("grid construction and node lookup") {
  RouteGraph g = RouteGraph::make_grid(5, 4, 42);
  CHECK(g.node_count() == 20);
  CHECK(g.mode() == MapMode::Grid);
  CHECK(g.node_at(0, 0) == 0);
  CHECK(g.node_at(4, 3) == 19);
  CHECK(g.node(7).coord.x == doctest::Approx(2.0));
  CHECK(g.node(7).coord.y == doctest::Approx(1.0));
  CHECK_THROWS_AS(g.node_at(5, 0), GraphError);
  CHECK_THROWS_AS(g.node(99), GraphError);
  CHECK_THROWS_AS(RouteGraph::make_grid(1, 1, 0), GraphError);
}

TEST_CASE("edge bookkeeping") {
  RouteGraph g = RouteGraph::make_grid(3, 3, 0);
  g.add_edge(4, 0, make_cost(1, 0, 0, 0, 0, 0));
  CHECK(g.edges().size() == 1);
  CHECK(g.edges()[0].u == 0);  // canonical u < v
  CHECK(g.edges()[0].v == 4);
  CHECK(g.edge_between(0, 4).has_value());
  CHECK(g.edge_between(4, 0).has_value());
  CHECK_FALSE(g.edge_between(0, 1).has_value());
  CHECK_THROWS_AS(g.add_edge(0, 4, CostVector{}), GraphError);  // duplicate
  CHECK_THROWS_AS(g.add_edge(2, 2, CostVector{}), GraphError);  // self-loop
  CHECK_THROWS_AS(g.add_edge(0, 99, CostVector{}), GraphError);
}

TEST_CASE("neighbors are sorted and skip blocked edges") {
  RouteGraph g = RouteGraph::make_grid(3, 3, 0);
  g.add_edge(4, 5, CostVector{});
  g.add_edge(4, 1, CostVector{});
  g.add_edge(4, 3, CostVector{}, /*passable=*/false);
  g.add_edge(4, 7, CostVector{});
  auto nb = g.neighbors(4);
  REQUIRE(nb.size() == 3);
  CHECK(nb[0].node == 1);
  CHECK(nb[1].node == 5);
  CHECK(nb[2].node == 7);
}

TEST_CASE("free-mode graphs require dense ascending ids") {
  std::vector<Node> bad = {Node{0, {}}, Node{2, {}}};
  CHECK_THROWS_AS(RouteGraph::make_free(std::move(bad), 0), GraphError);
  std::vector<Node> good = {Node{0, Point{0, 0}}, Node{1, Point{3, 4}}};
  RouteGraph g = RouteGraph::make_free(std::move(good), 0);
  CHECK(g.node_at(2.9, 4.1) == 1);  // nearest node
}

TEST_CASE("connectivity flood fill") {
  RouteGraph g = fixtures::diamond();
  CHECK(g.passable_connected());
  // The diamond is a 4-cycle: dropping one edge keeps it connected,
  // dropping two on the same node cuts it.
  CHECK(g.passable_connected_without(*g.edge_between(1, 2)));
  g.edge_mut(*g.edge_between(1, 2)).passable = false;
  CHECK(g.passable_connected());
  CHECK_FALSE(g.passable_connected_without(*g.edge_between(0, 1)));
}
