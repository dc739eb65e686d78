#include "wayplan/mapio.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "wayplan/ioutil.hpp"

namespace wayplan {

namespace {

void write_cost(std::ostringstream& out, const CostVector& c) {
  // Keys sorted alphabetically, matching the rest of the document.
  out << "{\"danger\":" << fmt6(c.danger()) << ",\"dist\":" << fmt6(c.dist())
      << ",\"energy\":" << fmt6(c.energy()) << ",\"scenic\":" << fmt6(c.scenic())
      << ",\"slope\":" << fmt6(c.slope()) << ",\"toll\":" << fmt6(c.toll()) << "}";
}

CostVector read_cost(const nlohmann::json& j, const std::string& where) {
  CostVector c;
  for (std::size_t a = 0; a < kNumObjectives; ++a) {
    const char* name = kObjectiveNames[a];
    if (!j.contains(name) || !j[name].is_number()) {
      throw GraphError(where + ": cost component '" + name + "' missing or not a number");
    }
    double v = j[name].get<double>();
    if (v < 0.0) throw GraphError(where + ": cost component '" + name + "' negative");
    if (a > 0 && v > 1.0) {
      throw GraphError(where + ": per-edge '" + std::string(name) + "' exceeds 1");
    }
    c.at(a) = v;
  }
  return c;
}

}  // namespace

std::string save_map(const RouteGraph& g) {
  std::ostringstream out;
  out << "{\"edges\":[";
  // Canonical edge order: (u, v) ascending.
  std::vector<int> order(g.edges().size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Edge& ea = g.edges()[a];
    const Edge& eb = g.edges()[b];
    return ea.u != eb.u ? ea.u < eb.u : ea.v < eb.v;
  });
  bool first = true;
  for (int i : order) {
    const Edge& e = g.edges()[static_cast<std::size_t>(i)];
    if (!first) out << ",";
    first = false;
    out << "{\"cost\":";
    write_cost(out, e.cost);
    out << ",\"passable\":" << (e.passable ? "true" : "false") << ",\"u\":" << e.u
        << ",\"v\":" << e.v << "}";
  }
  out << "]";
  if (g.mode() == MapMode::Grid) {
    out << ",\"height\":" << g.height() << ",\"mode\":\"grid\"";
  } else {
    out << ",\"mode\":\"free\",\"nodes\":[";
    first = true;
    for (const Node& n : g.nodes()) {
      if (!first) out << ",";
      first = false;
      out << "{\"id\":" << n.id << ",\"x\":" << fmt6(n.coord.x) << ",\"y\":" << fmt6(n.coord.y)
          << "}";
    }
    out << "]";
  }
  out << ",\"seed\":" << g.seed() << ",\"version\":1";
  if (g.mode() == MapMode::Grid) out << ",\"width\":" << g.width();
  out << "}\n";
  return out.str();
}

RouteGraph load_map(const std::string& bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw GraphError(std::string("malformed map document: ") + e.what());
  }
  if (!j.is_object()) throw GraphError("map document is not a JSON object");
  if (j.value("version", 0) != 1) throw GraphError("unsupported map version");
  std::string mode = j.value("mode", "");
  std::uint64_t seed = j.value("seed", 0ull);

  RouteGraph g = [&] {
    if (mode == "grid") {
      int w = j.value("width", 0);
      int h = j.value("height", 0);
      return RouteGraph::make_grid(w, h, seed);
    }
    if (mode == "free") {
      if (!j.contains("nodes") || !j["nodes"].is_array()) {
        throw GraphError("free-mode map requires a nodes array");
      }
      std::vector<Node> nodes;
      for (const auto& nj : j["nodes"]) {
        nodes.push_back(Node{nj.at("id").get<NodeId>(),
                             Point{nj.at("x").get<double>(), nj.at("y").get<double>()}});
      }
      return RouteGraph::make_free(std::move(nodes), seed);
    }
    throw GraphError("mode must be \"grid\" or \"free\"");
  }();

  if (!j.contains("edges") || !j["edges"].is_array()) {
    throw GraphError("map document has no edges array");
  }
  for (const auto& ej : j["edges"]) {
    NodeId u = ej.value("u", -1);
    NodeId v = ej.value("v", -1);
    std::string where = "edge (" + std::to_string(u) + "," + std::to_string(v) + ")";
    if (!g.has_node(u) || !g.has_node(v)) {
      throw GraphError(where + " references a nonexistent node");
    }
    if (!ej.contains("cost")) throw GraphError(where + " has no cost");
    g.add_edge(u, v, read_cost(ej["cost"], where), ej.value("passable", true));
  }
  if (!g.passable_connected()) {
    throw GraphError("passable subgraph is not connected");
  }
  return g;
}

RouteGraph load_map_file(const std::string& path) { return load_map(read_file(path)); }

void save_map_file(const RouteGraph& graph, const std::string& path) {
  write_file(path, save_map(graph));
}

}  // namespace wayplan
