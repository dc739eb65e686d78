#pragma once

#include <string>
#include <vector>

#include "wayplan/orchestrator.hpp"

namespace wayplan {

struct RenderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// SVG 1.1 heatmap: grid cells shaded by the mean value of the attribute on
// incident passable edges (linear grayscale-to-warm ramp), route polyline,
// labeled POI / start / end markers. Free-mode maps render edges as lines.
// Byte-deterministic for identical inputs.
std::string render_svg(const RouteGraph& graph, Objective attr,
                       const std::vector<NodeId>& path = {},
                       const std::vector<Stop>& waypoints = {},
                       const PoiCatalog* catalog = nullptr);

// GeoJSON FeatureCollection: route as a LineString, waypoints as Points.
std::string render_geojson(const RouteGraph& graph, const std::vector<NodeId>& path,
                           const std::vector<Stop>& waypoints = {},
                           const PoiCatalog* catalog = nullptr);

}  // namespace wayplan
