#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wayplan/graph.hpp"

namespace wayplan {

struct PoiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class PoiCategory { Restaurant, CoffeeShop, Gym, Park };

const char* category_name(PoiCategory c);
std::optional<PoiCategory> category_from_name(const std::string& name);

inline const std::vector<std::string> kCuisines = {
    "Chinese", "American", "Italian", "Mexican", "Indian", "Mediterranean", "French"};

// bool | integer | real | string ("HH:MM-HH:MM" opening hours stay strings).
using AttrValue = std::variant<bool, std::int64_t, double, std::string>;

struct PoiRecord {
  std::string id;
  PoiCategory category = PoiCategory::Restaurant;
  NodeId node = 0;
  std::string name;
  std::map<std::string, AttrValue> attrs;

  double rating() const;
  std::int64_t average_cost() const;  // 0 when the category has none (parks)
};

enum class FilterOp { Eq, Ge, Le, Contains, OpenAt };

struct AttrFilter {
  std::string field;
  FilterOp op = FilterOp::Eq;
  AttrValue value;  // OpenAt carries "HH:MM" as a string

  bool operator==(const AttrFilter&) const = default;
};

const char* filter_op_name(FilterOp op);
std::optional<FilterOp> filter_op_from_name(const std::string& name);

// Field names and types mandated for a category; throws PoiError on
// unknown field or an op incompatible with the field type.
void check_filter(PoiCategory category, const AttrFilter& f);

struct PoiCatalog {
  std::vector<PoiRecord> pois;
  std::uint64_t seed = 0;

  const PoiRecord* find(const std::string& id) const;
};

// Exactly 50 POIs: 20 restaurants, 15 coffee shops, 10 gyms, 5 parks, on
// distinct nodes. Pure function of (graph, seed).
PoiCatalog generate_pois(const RouteGraph& graph, std::uint64_t seed);

// Conjunction of filters; preserves catalog order.
std::vector<PoiRecord> filter_pois(const PoiCatalog& catalog, PoiCategory category,
                                   const std::vector<AttrFilter>& filters);

// Descending rating; ties by octile detour via anchors, then id.
std::vector<PoiRecord> rank_pois(std::vector<PoiRecord> candidates, const RouteGraph& graph,
                                 NodeId anchor_a, NodeId anchor_b);

struct Stop {
  NodeId node = 0;
  std::string poi_id;                // empty for bare waypoints
  std::optional<int> fixed_position;  // index in the visit sequence
};

// Minimum-octile-tour ordering over admissible permutations; at most 6 free
// stops. Returns [start, stops..., end] as node ids paired with poi ids.
std::vector<Stop> order_stops(const RouteGraph& graph, NodeId start, NodeId end,
                              const std::vector<Stop>& stops);

std::string save_catalog(const PoiCatalog& catalog);
PoiCatalog load_catalog(const std::string& bytes);

// Time helpers for the open_at op; minutes since midnight.
int parse_time_of_day(const std::string& hhmm);
bool open_at(const std::string& opening_hours, int minutes);

}  // namespace wayplan
