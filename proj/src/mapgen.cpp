#include "wayplan/mapgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wayplan/rng.hpp"

namespace wayplan {

namespace {

constexpr std::uint64_t kZoneStream = 0x5a4f4e4553ull;   // zone layout
constexpr std::uint64_t kAttrStream = 0x41545452ull;     // edge attributes
constexpr std::uint64_t kBlockStream = 0x424c4f434bull;  // impassable edges

std::vector<CostZone> derive_zones(const GridMapSpec& spec) {
  std::vector<CostZone> zones;
  Rng rng(spec.seed ^ kZoneStream);
  double max_r = (std::min(spec.width, spec.height) - 1) / 2.0 - 0.5;
  for (std::size_t a = 1; a < kNumObjectives; ++a) {
    for (int z = 0; z < spec.zone_counts[a]; ++z) {
      double r = rng.uniform(4.0, 9.0);
      if (r > max_r) r = max_r;
      if (r < 1.5) continue;  // grid too small for a meaningful zone
      double cx = rng.uniform(r, spec.width - 1 - r);
      double cy = rng.uniform(r, spec.height - 1 - r);
      int npts = rng.uniform_int(5, 9);
      std::vector<Point> pts;
      for (int i = 0; i < npts; ++i) {
        double ang = rng.uniform(0.0, 6.283185307179586);
        double rad = rng.uniform(0.6 * r, r);
        pts.push_back(Point{cx + rad * std::cos(ang), cy + rad * std::sin(ang)});
      }
      auto hull = convex_hull(pts);
      if (hull.size() < 3) {
        --z;  // degenerate sample, redraw
        continue;
      }
      zones.push_back(CostZone{static_cast<Objective>(a), hull, ZoneLevel::High});
    }
  }
  return zones;
}

void validate_zones(const GridMapSpec& spec, const std::vector<CostZone>& zones) {
  for (std::size_t i = 0; i < zones.size(); ++i) {
    const CostZone& z = zones[i];
    if (z.polygon.size() < 3) {
      throw GraphError("zone " + std::to_string(i) + " has fewer than 3 vertices");
    }
    // Vertices may overhang the grid by up to one cell so a zone can cover
    // edge midpoints on the boundary rows and columns.
    for (const Point& p : z.polygon) {
      if (p.x < -1 || p.x > spec.width || p.y < -1 || p.y > spec.height) {
        throw GraphError("zone " + std::to_string(i) + " vertex (" + std::to_string(p.x) +
                         "," + std::to_string(p.y) + ") outside grid bounds");
      }
    }
  }
}

}  // namespace

std::vector<CostZone> resolve_zones(const GridMapSpec& spec) {
  if (!spec.zones.empty()) return spec.zones;
  return derive_zones(spec);
}

RouteGraph generate_grid_map(const GridMapSpec& spec) {
  if (spec.block_fraction < 0.0 || spec.block_fraction > 0.05) {
    throw GraphError("block_fraction must be in [0, 0.05]");
  }
  RouteGraph g = RouteGraph::make_grid(spec.width, spec.height, spec.seed);

  std::vector<CostZone> zones = resolve_zones(spec);
  if (!spec.zones.empty()) validate_zones(spec, zones);

  // Edge creation order fixed: per node, offsets E, SW, S, SE.
  const int dx[] = {1, -1, 0, 1};
  const int dy[] = {0, 1, 1, 1};
  Rng attr_rng(spec.seed ^ kAttrStream);
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      for (int d = 0; d < 4; ++d) {
        int nx = x + dx[d];
        int ny = y + dy[d];
        if (nx < 0 || nx >= spec.width || ny < 0 || ny >= spec.height) continue;
        CostVector c;
        c[Objective::Dist] = (dx[d] != 0 && dy[d] != 0) ? kSqrt2 : 1.0;
        Point mid{(x + nx) / 2.0, (y + ny) / 2.0};
        for (std::size_t a = 1; a < kNumObjectives; ++a) {
          bool high = false;
          bool low = false;
          for (const CostZone& z : zones) {
            if (static_cast<std::size_t>(z.attribute) != a) continue;
            if (!point_in_polygon(mid, z.polygon)) continue;
            (z.level == ZoneLevel::High ? high : low) = true;
          }
          double val = (high && !low) ? attr_rng.uniform(0.85, 0.95)
                                      : attr_rng.uniform(0.05, 0.15);
          c.at(a) = std::clamp(val, 0.0, 1.0);
        }
        g.add_edge(y * spec.width + x, ny * spec.width + nx, c);
      }
    }
  }

  // Block edges by rejection: keep a candidate only if the passable subgraph
  // stays connected.
  auto target = static_cast<std::size_t>(spec.block_fraction * g.edges().size());
  if (target > 0) {
    Rng block_rng(spec.seed ^ kBlockStream);
    std::size_t blocked = 0;
    std::size_t failures = 0;
    while (blocked < target) {
      if (failures > 10 * target) {
        throw GraphError("could not block " + std::to_string(target) +
                         " edges without disconnecting the graph");
      }
      int e = static_cast<int>(block_rng.next_below(g.edges().size()));
      Edge& ed = g.edge_mut(e);
      if (!ed.passable) {
        ++failures;
        continue;
      }
      ed.passable = false;
      if (g.passable_connected()) {
        ++blocked;
      } else {
        ed.passable = true;
        ++failures;
      }
    }
  }
  return g;
}

}  // namespace wayplan
