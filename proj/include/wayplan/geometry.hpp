#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace wayplan {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

constexpr double kSqrt2 = 1.4142135623730951;

// Shortest 8-connected grid distance: max(dx,dy) + (sqrt2-1)*min(dx,dy).
inline double octile(const Point& a, const Point& b) {
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  return std::max(dx, dy) + (kSqrt2 - 1.0) * std::min(dx, dy);
}

inline double euclid(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Even-odd rule; points exactly on an edge count as inside often enough for
// zone membership, which only needs a consistent rule.
inline bool point_in_polygon(const Point& p, const std::vector<Point>& poly) {
  bool inside = false;
  std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xint = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < xint) inside = !inside;
    }
  }
  return inside;
}

// Andrew's monotone chain; returns hull in counter-clockwise order.
inline std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace wayplan
