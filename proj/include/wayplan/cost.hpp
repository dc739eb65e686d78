#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace wayplan {

// Component order is fixed globally: (dist, scenic, energy, danger, slope, toll).
enum class Objective : int {
  Dist = 0,
  Scenic = 1,
  Energy = 2,
  Danger = 3,
  Slope = 4,
  Toll = 5,
};

constexpr std::size_t kNumObjectives = 6;

constexpr std::array<const char*, kNumObjectives> kObjectiveNames = {
    "dist", "scenic", "energy", "danger", "slope", "toll"};

inline const char* objective_name(Objective o) {
  return kObjectiveNames[static_cast<std::size_t>(o)];
}

inline std::optional<Objective> objective_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNumObjectives; ++i) {
    if (name == kObjectiveNames[i]) return static_cast<Objective>(i);
  }
  return std::nullopt;
}

// Six-component cost vector. Per-edge non-dist components are in [0,1];
// path sums are unbounded.
struct CostVector {
  std::array<double, kNumObjectives> v{};

  double& operator[](Objective o) { return v[static_cast<std::size_t>(o)]; }
  double operator[](Objective o) const { return v[static_cast<std::size_t>(o)]; }
  double& at(std::size_t i) { return v[i]; }
  double at(std::size_t i) const { return v[i]; }

  double dist() const { return v[0]; }
  double scenic() const { return v[1]; }
  double energy() const { return v[2]; }
  double danger() const { return v[3]; }
  double slope() const { return v[4]; }
  double toll() const { return v[5]; }

  CostVector& operator+=(const CostVector& o) {
    for (std::size_t i = 0; i < kNumObjectives; ++i) v[i] += o.v[i];
    return *this;
  }
  friend CostVector operator+(CostVector a, const CostVector& b) { return a += b; }
  bool operator==(const CostVector&) const = default;
};

inline CostVector make_cost(double dist, double scenic, double energy, double danger,
                            double slope, double toll) {
  CostVector c;
  c.v = {dist, scenic, energy, danger, slope, toll};
  return c;
}

}  // namespace wayplan
