#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wayplan/cost.hpp"
#include "wayplan/geometry.hpp"

namespace wayplan {

using NodeId = int;

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Node {
  NodeId id = 0;
  Point coord;
};

// Bidirectional edge stored once with u < v; cost is shared by both directions.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  bool passable = true;
  CostVector cost;
};

struct Neighbor {
  NodeId node;
  int edge;  // index into edges()
  const CostVector* cost;
};

enum class MapMode { Grid, Free };

// Immutable after construction; safe to share across concurrent readers.
class RouteGraph {
 public:
  static RouteGraph make_grid(int width, int height, std::uint64_t seed);
  static RouteGraph make_free(std::vector<Node> nodes, std::uint64_t seed);

  MapMode mode() const { return mode_; }
  int width() const { return width_; }
  int height() const { return height_; }
  std::uint64_t seed() const { return seed_; }

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const;
  bool has_node(NodeId id) const {
    return id >= 0 && static_cast<std::size_t>(id) < nodes_.size();
  }

  const std::vector<Edge>& edges() const { return edges_; }
  Edge& edge_mut(int idx) { return edges_[idx]; }

  // Grid node id at (x, y), or the node nearest to (x, y) in free mode.
  NodeId node_at(double x, double y) const;

  void add_edge(NodeId u, NodeId v, CostVector cost, bool passable = true);
  std::optional<int> edge_between(NodeId u, NodeId v) const;

  // Passable outgoing edges, ascending neighbor index.
  std::vector<Neighbor> neighbors(NodeId id) const;

  bool passable_connected() const;
  bool passable_connected_without(int skip_edge) const;

 private:
  MapMode mode_ = MapMode::Grid;
  int width_ = 0;
  int height_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;  // node -> edge indices, ascending neighbor id
};

}  // namespace wayplan
