#include "wayplan/render.hpp"

#include <algorithm>
#include <sstream>

#include "wayplan/ioutil.hpp"

namespace wayplan {

namespace {

constexpr double kCell = 20.0;  // px per grid unit
constexpr double kMargin = 30.0;

// Linear ramp from near-white gray to a warm red as intensity rises.
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  int r = static_cast<int>(240.0 + (200.0 - 240.0) * t + 0.5);
  int g = static_cast<int>(240.0 + (60.0 - 240.0) * t + 0.5);
  int b = static_cast<int>(240.0 + (30.0 - 240.0) * t + 0.5);
  return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
}

double px(double coord) { return kMargin + coord * kCell; }

// Mean attribute value over passable edges incident to each node.
std::vector<double> node_intensity(const RouteGraph& graph, Objective attr) {
  std::vector<double> sum(graph.node_count(), 0.0);
  std::vector<int> count(graph.node_count(), 0);
  for (const Edge& e : graph.edges()) {
    if (!e.passable) continue;
    sum[e.u] += e.cost[attr];
    sum[e.v] += e.cost[attr];
    ++count[e.u];
    ++count[e.v];
  }
  double max_mean = 0.0;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    if (count[i]) sum[i] /= count[i];
    max_mean = std::max(max_mean, sum[i]);
  }
  if (max_mean > 0.0) {
    for (double& v : sum) v /= max_mean;
  }
  return sum;
}

void marker(std::ostringstream& out, double x, double y, const std::string& fill,
            const std::string& label) {
  out << "<circle cx=\"" << fmt2(x) << "\" cy=\"" << fmt2(y)
      << "\" r=\"6\" fill=\"" << fill << "\" stroke=\"#202020\" stroke-width=\"1\"/>\n";
  out << "<text x=\"" << fmt2(x + 8.0) << "\" y=\"" << fmt2(y - 8.0)
      << "\" font-family=\"monospace\" font-size=\"11\" fill=\"#202020\">" << label
      << "</text>\n";
}

}  // namespace

std::string render_svg(const RouteGraph& graph, Objective attr, const std::vector<NodeId>& path,
                       const std::vector<Stop>& waypoints, const PoiCatalog* catalog) {
  double span_x = 1.0, span_y = 1.0;
  for (const Node& n : graph.nodes()) {
    span_x = std::max(span_x, n.coord.x + 1.0);
    span_y = std::max(span_y, n.coord.y + 1.0);
  }
  double w = 2.0 * kMargin + span_x * kCell;
  double h = 2.0 * kMargin + span_y * kCell;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt2(w)
      << "\" height=\"" << fmt2(h) << "\" viewBox=\"0 0 " << fmt2(w) << " " << fmt2(h)
      << "\">\n";
  out << "<rect width=\"" << fmt2(w) << "\" height=\"" << fmt2(h) << "\" fill=\"#ffffff\"/>\n";

  std::vector<double> intensity = node_intensity(graph, attr);
  if (graph.mode() == MapMode::Grid) {
    for (const Node& n : graph.nodes()) {
      out << "<rect x=\"" << fmt2(px(n.coord.x) - kCell / 2.0) << "\" y=\""
          << fmt2(px(n.coord.y) - kCell / 2.0) << "\" width=\"" << fmt2(kCell)
          << "\" height=\"" << fmt2(kCell) << "\" fill=\"" << ramp(intensity[n.id])
          << "\"/>\n";
    }
  } else {
    for (const Edge& e : graph.edges()) {
      if (!e.passable) continue;
      const Point& a = graph.node(e.u).coord;
      const Point& b = graph.node(e.v).coord;
      double t = (intensity[e.u] + intensity[e.v]) / 2.0;
      out << "<line x1=\"" << fmt2(px(a.x)) << "\" y1=\"" << fmt2(px(a.y)) << "\" x2=\""
          << fmt2(px(b.x)) << "\" y2=\"" << fmt2(px(b.y)) << "\" stroke=\"" << ramp(t)
          << "\" stroke-width=\"2\"/>\n";
    }
  }

  if (path.size() >= 2) {
    out << "<polyline fill=\"none\" stroke=\"#1f5fd0\" stroke-width=\"3\" points=\"";
    for (std::size_t i = 0; i < path.size(); ++i) {
      const Point& p = graph.node(path[i]).coord;
      out << (i ? " " : "") << fmt2(px(p.x)) << "," << fmt2(px(p.y));
    }
    out << "\"/>\n";
  }

  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    const Stop& s = waypoints[i];
    const Point& p = graph.node(s.node).coord;
    if (i == 0) {
      marker(out, px(p.x), px(p.y), "#2e9e4f", "start");
    } else if (i + 1 == waypoints.size()) {
      marker(out, px(p.x), px(p.y), "#d04040", "end");
    } else {
      std::string label = s.poi_id;
      if (catalog) {
        if (const PoiRecord* rec = catalog->find(s.poi_id)) label = rec->name;
      }
      marker(out, px(p.x), px(p.y), "#e8a020", label);
    }
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_geojson(const RouteGraph& graph, const std::vector<NodeId>& path,
                           const std::vector<Stop>& waypoints, const PoiCatalog* catalog) {
  std::string out = "{\"features\":[";
  bool first = true;
  if (!path.empty()) {
    out += "{\"geometry\":{\"coordinates\":[";
    for (std::size_t i = 0; i < path.size(); ++i) {
      const Point& p = graph.node(path[i]).coord;
      if (i) out += ",";
      out += "[" + fmt6(p.x) + "," + fmt6(p.y) + "]";
    }
    out += "],\"type\":\"LineString\"},\"properties\":{\"kind\":\"route\"},"
           "\"type\":\"Feature\"}";
    first = false;
  }
  for (std::size_t i = 0; i < waypoints.size(); ++i) {
    const Stop& s = waypoints[i];
    const Point& p = graph.node(s.node).coord;
    std::string kind = i == 0 ? "start" : (i + 1 == waypoints.size() ? "end" : "poi");
    std::string name;
    if (kind == "poi" && catalog) {
      if (const PoiRecord* rec = catalog->find(s.poi_id)) name = rec->name;
    }
    if (!first) out += ",";
    first = false;
    out += "{\"geometry\":{\"coordinates\":[" + fmt6(p.x) + "," + fmt6(p.y) +
           "],\"type\":\"Point\"},\"properties\":{\"kind\":\"" + kind + "\"";
    if (!s.poi_id.empty()) out += ",\"poi_id\":\"" + s.poi_id + "\"";
    if (!name.empty()) out += ",\"name\":\"" + name + "\"";
    out += "},\"type\":\"Feature\"}";
  }
  out += "],\"type\":\"FeatureCollection\"}\n";
  return out;
}

}  // namespace wayplan
