#include "wayplan/graph.hpp"

#include <algorithm>
#include <limits>

namespace wayplan {

RouteGraph RouteGraph::make_grid(int width, int height, std::uint64_t seed) {
  if (width < 1 || height < 1 || width * height < 4) {
    throw GraphError("grid dimensions too small: " + std::to_string(width) + "x" +
                     std::to_string(height));
  }
  RouteGraph g;
  g.mode_ = MapMode::Grid;
  g.width_ = width;
  g.height_ = height;
  g.seed_ = seed;
  g.nodes_.reserve(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      g.nodes_.push_back(Node{y * width + x, Point{double(x), double(y)}});
    }
  }
  g.adj_.resize(g.nodes_.size());
  return g;
}

RouteGraph RouteGraph::make_free(std::vector<Node> nodes, std::uint64_t seed) {
  RouteGraph g;
  g.mode_ = MapMode::Free;
  g.seed_ = seed;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id != static_cast<NodeId>(i)) {
      throw GraphError("node ids must be dense and ascending; got id " +
                       std::to_string(nodes[i].id) + " at position " + std::to_string(i));
    }
  }
  g.nodes_ = std::move(nodes);
  g.adj_.resize(g.nodes_.size());
  return g;
}

const Node& RouteGraph::node(NodeId id) const {
  if (!has_node(id)) throw GraphError("unknown node " + std::to_string(id));
  return nodes_[static_cast<std::size_t>(id)];
}

NodeId RouteGraph::node_at(double x, double y) const {
  if (mode_ == MapMode::Grid) {
    int xi = static_cast<int>(x);
    int yi = static_cast<int>(y);
    if (xi < 0 || xi >= width_ || yi < 0 || yi >= height_) {
      throw GraphError("coordinate (" + std::to_string(xi) + "," + std::to_string(yi) +
                       ") outside grid");
    }
    return yi * width_ + xi;
  }
  NodeId best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (const Node& n : nodes_) {
    double d = euclid(n.coord, Point{x, y});
    if (d < best_d) {
      best_d = d;
      best = n.id;
    }
  }
  if (best < 0) throw GraphError("graph has no nodes");
  return best;
}

void RouteGraph::add_edge(NodeId u, NodeId v, CostVector cost, bool passable) {
  if (!has_node(u) || !has_node(v)) {
    throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                     ") references a nonexistent node");
  }
  if (u == v) throw GraphError("self-loop at node " + std::to_string(u));
  if (u > v) std::swap(u, v);
  if (edge_between(u, v)) {
    throw GraphError("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  int idx = static_cast<int>(edges_.size());
  edges_.push_back(Edge{u, v, passable, cost});
  auto insert_sorted = [&](NodeId at, NodeId other) {
    auto& lst = adj_[static_cast<std::size_t>(at)];
    auto pos = std::lower_bound(lst.begin(), lst.end(), other, [&](int e, NodeId nb) {
      const Edge& ed = edges_[static_cast<std::size_t>(e)];
      return (ed.u == at ? ed.v : ed.u) < nb;
    });
    lst.insert(pos, idx);
  };
  insert_sorted(u, v);
  insert_sorted(v, u);
}

std::optional<int> RouteGraph::edge_between(NodeId u, NodeId v) const {
  if (!has_node(u) || !has_node(v)) return std::nullopt;
  for (int e : adj_[static_cast<std::size_t>(u)]) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if ((ed.u == u && ed.v == v) || (ed.u == v && ed.v == u)) return e;
  }
  return std::nullopt;
}

std::vector<Neighbor> RouteGraph::neighbors(NodeId id) const {
  if (!has_node(id)) throw GraphError("unknown node " + std::to_string(id));
  std::vector<Neighbor> out;
  for (int e : adj_[static_cast<std::size_t>(id)]) {
    const Edge& ed = edges_[static_cast<std::size_t>(e)];
    if (!ed.passable) continue;
    out.push_back(Neighbor{ed.u == id ? ed.v : ed.u, e, &ed.cost});
  }
  return out;
}

bool RouteGraph::passable_connected() const { return passable_connected_without(-1); }

bool RouteGraph::passable_connected_without(int skip_edge) const {
  if (nodes_.empty()) return true;
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    for (int e : adj_[static_cast<std::size_t>(cur)]) {
      if (e == skip_edge) continue;
      const Edge& ed = edges_[static_cast<std::size_t>(e)];
      if (!ed.passable) continue;
      NodeId nb = ed.u == cur ? ed.v : ed.u;
      if (!seen[static_cast<std::size_t>(nb)]) {
        seen[static_cast<std::size_t>(nb)] = 1;
        ++reached;
        stack.push_back(nb);
      }
    }
  }
  return reached == nodes_.size();
}

}  // namespace wayplan
