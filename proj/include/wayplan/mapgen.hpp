#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wayplan/graph.hpp"

namespace wayplan {

enum class ZoneLevel { High, Low };

struct CostZone {
  Objective attribute = Objective::Scenic;
  std::vector<Point> polygon;  // >= 3 vertices
  ZoneLevel level = ZoneLevel::High;
};

struct GridMapSpec {
  int width = 50;
  int height = 30;
  std::uint64_t seed = 0;
  double block_fraction = 0.02;  // in [0, 0.05]

  // Zones generated per non-dist attribute when `zones` is empty.
  // Indexed by Objective; the dist entry is ignored.
  std::array<int, kNumObjectives> zone_counts = {0, 2, 2, 2, 2, 2};
  std::vector<CostZone> zones;  // explicit zones override generation
};

// Deterministic: identical (seed, parameters) yields a bit-identical graph.
// Base attribute draw uniform(0.05, 0.15) outside zones, uniform(0.85, 0.95)
// inside; dist is Euclidean step length (1 orthogonal, sqrt2 diagonal).
RouteGraph generate_grid_map(const GridMapSpec& spec);

// The zones the generator would use for `spec` (explicit or derived);
// exposed for rendering and tests.
std::vector<CostZone> resolve_zones(const GridMapSpec& spec);

}  // namespace wayplan
