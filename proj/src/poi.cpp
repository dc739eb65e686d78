#include "wayplan/poi.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <json.hpp>

#include "wayplan/rng.hpp"

namespace wayplan {

namespace {

enum class FieldType { Bool, Int, Real, Cuisine, Hours };

struct FieldSpec {
  const char* name;
  FieldType type;
};

const std::vector<FieldSpec>& category_fields(PoiCategory c) {
  static const std::vector<FieldSpec> restaurant = {
      {"cuisine", FieldType::Cuisine},
      {"rating", FieldType::Real},
      {"average_cost", FieldType::Int},
      {"is_vegetarian_friendly", FieldType::Bool},
      {"opening_hours", FieldType::Hours},
  };
  static const std::vector<FieldSpec> coffee = {
      {"is_work_friendly", FieldType::Bool},
      {"average_cost", FieldType::Int},
      {"rating", FieldType::Real},
      {"opening_hours", FieldType::Hours},
  };
  static const std::vector<FieldSpec> gym = {
      {"rating", FieldType::Real},
      {"average_cost", FieldType::Int},
      {"has_swimming_pool", FieldType::Bool},
      {"opening_hours", FieldType::Hours},
  };
  static const std::vector<FieldSpec> park = {
      {"has_entry_fee", FieldType::Bool},
      {"rating", FieldType::Real},
      {"opening_hours", FieldType::Hours},
  };
  switch (c) {
    case PoiCategory::Restaurant: return restaurant;
    case PoiCategory::CoffeeShop: return coffee;
    case PoiCategory::Gym: return gym;
    case PoiCategory::Park: return park;
  }
  return park;
}

const FieldSpec* find_field(PoiCategory c, const std::string& name) {
  for (const FieldSpec& f : category_fields(c)) {
    if (name == f.name) return &f;
  }
  return nullptr;
}

double as_number(const AttrValue& v) {
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  if (std::holds_alternative<std::int64_t>(v)) return double(std::get<std::int64_t>(v));
  throw PoiError("value is not numeric");
}

const std::vector<std::string>& name_pool(PoiCategory c) {
  static const std::vector<std::string> restaurants = {
      "Trattoria Fontana", "Golden Dragon", "Casa Miguel", "Spice Route", "Blue Olive",
      "Le Petit Jardin", "Prairie Grill", "Jade Palace", "Taverna Eleni", "El Camino",
      "Saffron House", "Bistro Claire", "Iron Skillet", "Lotus Garden", "Vinea",
      "Maple and Thyme", "Cantina Roja", "Bombay Lane", "Brasserie Lumen", "The Hearth"};
  static const std::vector<std::string> coffee = {
      "Daily Grind", "Mocha Corner", "Steam and Bean", "Paper Cup", "Roast Lab",
      "Velvet Brew", "Morning Signal", "Copper Kettle", "Static Coffee", "Fern and Foam",
      "Northside Beans", "The Percolator", "Drip Theory", "Cloud Nine Cafe", "Ember Roasters"};
  static const std::vector<std::string> gyms = {
      "Ironworks Gym", "Pulse Fitness", "Summit Strength", "The Forge", "Apex Athletics",
      "Core Collective", "Gravity Gym", "Anchor Fitness", "Tempo Training", "Atlas Club"};
  static const std::vector<std::string> parks = {
      "Riverside Park", "Oakwood Commons", "Meridian Green", "Lantern Hill Park",
      "Willow Field"};
  switch (c) {
    case PoiCategory::Restaurant: return restaurants;
    case PoiCategory::CoffeeShop: return coffee;
    case PoiCategory::Gym: return gyms;
    case PoiCategory::Park: return parks;
  }
  return parks;
}

const std::vector<std::string>& hours_pool(PoiCategory c) {
  static const std::vector<std::string> restaurant = {"11:00-22:00", "11:30-23:00",
                                                      "17:00-23:30", "12:00-21:00"};
  static const std::vector<std::string> coffee = {"06:30-18:00", "07:00-19:00", "08:00-20:00"};
  static const std::vector<std::string> gym = {"06:00-22:00", "05:30-23:00", "22:00-06:00"};
  static const std::vector<std::string> park = {"05:30-19:30", "06:00-20:00", "08:00-18:00"};
  switch (c) {
    case PoiCategory::Restaurant: return restaurant;
    case PoiCategory::CoffeeShop: return coffee;
    case PoiCategory::Gym: return gym;
    case PoiCategory::Park: return park;
  }
  return park;
}

double rounded_rating(Rng& rng) {
  double r = std::clamp(rng.normal(4.0, 0.5), 0.0, 5.0);
  return std::round(r * 10.0) / 10.0;
}

}  // namespace

const char* category_name(PoiCategory c) {
  switch (c) {
    case PoiCategory::Restaurant: return "restaurant";
    case PoiCategory::CoffeeShop: return "coffee_shop";
    case PoiCategory::Gym: return "gym";
    case PoiCategory::Park: return "park";
  }
  return "?";
}

std::optional<PoiCategory> category_from_name(const std::string& name) {
  if (name == "restaurant") return PoiCategory::Restaurant;
  if (name == "coffee_shop") return PoiCategory::CoffeeShop;
  if (name == "gym") return PoiCategory::Gym;
  if (name == "park") return PoiCategory::Park;
  return std::nullopt;
}

const char* filter_op_name(FilterOp op) {
  switch (op) {
    case FilterOp::Eq: return "eq";
    case FilterOp::Ge: return "ge";
    case FilterOp::Le: return "le";
    case FilterOp::Contains: return "contains";
    case FilterOp::OpenAt: return "open_at";
  }
  return "?";
}

std::optional<FilterOp> filter_op_from_name(const std::string& name) {
  if (name == "eq") return FilterOp::Eq;
  if (name == "ge") return FilterOp::Ge;
  if (name == "le") return FilterOp::Le;
  if (name == "contains") return FilterOp::Contains;
  if (name == "open_at") return FilterOp::OpenAt;
  return std::nullopt;
}

double PoiRecord::rating() const {
  auto it = attrs.find("rating");
  return it == attrs.end() ? 0.0 : as_number(it->second);
}

std::int64_t PoiRecord::average_cost() const {
  auto it = attrs.find("average_cost");
  if (it == attrs.end()) return 0;
  return std::get<std::int64_t>(it->second);
}

const PoiRecord* PoiCatalog::find(const std::string& id) const {
  for (const PoiRecord& p : pois) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

void check_filter(PoiCategory category, const AttrFilter& f) {
  const FieldSpec* fs = find_field(category, f.field);
  if (!fs) {
    throw PoiError("unknown field '" + f.field + "' for category " + category_name(category));
  }
  switch (f.op) {
    case FilterOp::Eq:
      return;
    case FilterOp::Ge:
    case FilterOp::Le:
      if (fs->type != FieldType::Int && fs->type != FieldType::Real) {
        throw PoiError("op '" + std::string(filter_op_name(f.op)) +
                       "' requires a numeric field, got '" + f.field + "'");
      }
      return;
    case FilterOp::Contains:
      if (fs->type != FieldType::Cuisine) {
        throw PoiError("op 'contains' requires a string field, got '" + f.field + "'");
      }
      return;
    case FilterOp::OpenAt:
      if (fs->type != FieldType::Hours) {
        throw PoiError("op 'open_at' only applies to opening_hours");
      }
      return;
  }
}

int parse_time_of_day(const std::string& hhmm) {
  if (hhmm.size() != 5 || hhmm[2] != ':') throw PoiError("bad time of day '" + hhmm + "'");
  int h = std::stoi(hhmm.substr(0, 2));
  int m = std::stoi(hhmm.substr(3, 2));
  if (h < 0 || h > 23 || m < 0 || m > 59) throw PoiError("bad time of day '" + hhmm + "'");
  return h * 60 + m;
}

bool open_at(const std::string& opening_hours, int minutes) {
  auto dash = opening_hours.find('-');
  if (dash == std::string::npos) throw PoiError("bad opening_hours '" + opening_hours + "'");
  int open = parse_time_of_day(opening_hours.substr(0, dash));
  int close = parse_time_of_day(opening_hours.substr(dash + 1));
  if (close >= open) return minutes >= open && minutes <= close;
  // Overnight range, e.g. 22:00-06:00.
  return minutes >= open || minutes <= close;
}

PoiCatalog generate_pois(const RouteGraph& graph, std::uint64_t seed) {
  if (graph.node_count() < 50) {
    throw PoiError("graph has " + std::to_string(graph.node_count()) +
                   " nodes; POI generation needs at least 50");
  }
  Rng rng(seed ^ 0x504f49ull);
  std::vector<NodeId> ids(graph.node_count());
  std::iota(ids.begin(), ids.end(), 0);
  rng.shuffle(ids);

  static const std::array<std::pair<PoiCategory, int>, 4> counts = {{
      {PoiCategory::Restaurant, 20},
      {PoiCategory::CoffeeShop, 15},
      {PoiCategory::Gym, 10},
      {PoiCategory::Park, 5},
  }};

  PoiCatalog catalog;
  catalog.seed = seed;
  std::size_t node_cursor = 0;
  for (auto [cat, count] : counts) {
    std::vector<std::string> names = name_pool(cat);
    rng.shuffle(names);
    const char prefix = std::toupper(category_name(cat)[0]);
    for (int i = 0; i < count; ++i) {
      PoiRecord p;
      char idbuf[8];
      std::snprintf(idbuf, sizeof(idbuf), "%c%02d", prefix, i + 1);
      p.id = idbuf;
      p.category = cat;
      p.node = ids[node_cursor++];
      p.name = names[static_cast<std::size_t>(i) % names.size()];
      p.attrs["rating"] = rounded_rating(rng);
      const auto& hours = hours_pool(cat);
      p.attrs["opening_hours"] = hours[rng.next_below(hours.size())];
      switch (cat) {
        case PoiCategory::Restaurant:
          p.attrs["cuisine"] = kCuisines[rng.next_below(kCuisines.size())];
          p.attrs["average_cost"] = std::int64_t(rng.uniform_int(15, 120));
          p.attrs["is_vegetarian_friendly"] = rng.bernoulli(0.5);
          break;
        case PoiCategory::CoffeeShop:
          p.attrs["average_cost"] = std::int64_t(rng.uniform_int(4, 15));
          p.attrs["is_work_friendly"] = rng.bernoulli(0.5);
          break;
        case PoiCategory::Gym:
          p.attrs["average_cost"] = std::int64_t(rng.uniform_int(10, 60));
          p.attrs["has_swimming_pool"] = rng.bernoulli(0.5);
          break;
        case PoiCategory::Park:
          p.attrs["has_entry_fee"] = rng.bernoulli(0.5);
          break;
      }
      catalog.pois.push_back(std::move(p));
    }
  }
  return catalog;
}

static bool matches(const PoiRecord& p, const AttrFilter& f) {
  auto it = p.attrs.find(f.field);
  if (it == p.attrs.end()) return false;
  const AttrValue& v = it->second;
  switch (f.op) {
    case FilterOp::Eq:
      if (std::holds_alternative<std::string>(v) || std::holds_alternative<bool>(v)) {
        return v == f.value;
      }
      return as_number(v) == as_number(f.value);
    case FilterOp::Ge:
      return as_number(v) >= as_number(f.value);
    case FilterOp::Le:
      return as_number(v) <= as_number(f.value);
    case FilterOp::Contains:
      return std::get<std::string>(v).find(std::get<std::string>(f.value)) !=
             std::string::npos;
    case FilterOp::OpenAt:
      return open_at(std::get<std::string>(v), parse_time_of_day(std::get<std::string>(f.value)));
  }
  return false;
}

std::vector<PoiRecord> filter_pois(const PoiCatalog& catalog, PoiCategory category,
                                   const std::vector<AttrFilter>& filters) {
  for (const AttrFilter& f : filters) check_filter(category, f);
  std::vector<PoiRecord> out;
  for (const PoiRecord& p : catalog.pois) {
    if (p.category != category) continue;
    bool ok = true;
    for (const AttrFilter& f : filters) {
      if (!matches(p, f)) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(p);
  }
  return out;
}

std::vector<PoiRecord> rank_pois(std::vector<PoiRecord> candidates, const RouteGraph& graph,
                                 NodeId anchor_a, NodeId anchor_b) {
  const Point a = graph.node(anchor_a).coord;
  const Point b = graph.node(anchor_b).coord;
  auto detour = [&](const PoiRecord& p) {
    const Point q = graph.node(p.node).coord;
    return octile(a, q) + octile(q, b) - octile(a, b);
  };
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const PoiRecord& x, const PoiRecord& y) {
                     if (x.rating() != y.rating()) return x.rating() > y.rating();
                     double dx = detour(x);
                     double dy = detour(y);
                     if (dx != dy) return dx < dy;
                     return x.id < y.id;
                   });
  return candidates;
}

std::vector<Stop> order_stops(const RouteGraph& graph, NodeId start, NodeId end,
                              const std::vector<Stop>& stops) {
  const std::size_t n = stops.size();
  std::vector<int> slot(n, -1);  // visit position -> stop index, -1 = open
  std::vector<int> free_idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (stops[i].fixed_position) {
      int pos = *stops[i].fixed_position;
      if (pos < 0 || pos >= static_cast<int>(n)) {
        throw PoiError("fixed_position " + std::to_string(pos) + " out of range");
      }
      if (slot[pos] != -1) throw PoiError("two stops fixed at position " + std::to_string(pos));
      slot[pos] = static_cast<int>(i);
    } else {
      free_idx.push_back(static_cast<int>(i));
    }
  }
  if (free_idx.size() > 6) {
    throw PoiError("too many freely ordered stops (" + std::to_string(free_idx.size()) +
                   "; limit 6)");
  }

  auto tour_length = [&](const std::vector<int>& order) {
    double len = 0.0;
    Point prev = graph.node(start).coord;
    for (int idx : order) {
      Point cur = graph.node(stops[static_cast<std::size_t>(idx)].node).coord;
      len += octile(prev, cur);
      prev = cur;
    }
    return len + octile(prev, graph.node(end).coord);
  };

  std::vector<int> perm = free_idx;
  std::sort(perm.begin(), perm.end());
  std::vector<int> best;
  double best_len = 0.0;
  do {
    std::vector<int> order = slot;
    std::size_t next_free = 0;
    for (std::size_t pos = 0; pos < n; ++pos) {
      if (order[pos] == -1) order[pos] = perm[next_free++];
    }
    double len = tour_length(order);
    if (best.empty() || len < best_len) {
      best = order;
      best_len = len;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<Stop> out;
  out.push_back(Stop{start, "", std::nullopt});
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (!best.empty()) out.push_back(stops[static_cast<std::size_t>(best[pos])]);
  }
  out.push_back(Stop{end, "", std::nullopt});
  return out;
}

static nlohmann::json attr_to_json(const AttrValue& v) {
  return std::visit([](const auto& x) { return nlohmann::json(x); }, v);
}

static AttrValue attr_from_json(const nlohmann::json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw PoiError("unsupported attribute value: " + j.dump());
}

std::string save_catalog(const PoiCatalog& catalog) {
  nlohmann::json j;
  j["version"] = 1;
  j["seed"] = catalog.seed;
  j["pois"] = nlohmann::json::array();
  for (const PoiRecord& p : catalog.pois) {
    nlohmann::json pj;
    pj["id"] = p.id;
    pj["category"] = category_name(p.category);
    pj["node"] = p.node;
    pj["name"] = p.name;
    for (const auto& [k, v] : p.attrs) pj["attrs"][k] = attr_to_json(v);
    j["pois"].push_back(pj);
  }
  return j.dump(2) + "\n";
}

PoiCatalog load_catalog(const std::string& bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    throw PoiError(std::string("malformed catalog document: ") + e.what());
  }
  if (j.value("version", 0) != 1) throw PoiError("unsupported catalog version");
  PoiCatalog c;
  c.seed = j.value("seed", 0ull);
  for (const auto& pj : j.at("pois")) {
    PoiRecord p;
    p.id = pj.at("id").get<std::string>();
    auto cat = category_from_name(pj.at("category").get<std::string>());
    if (!cat) throw PoiError("unknown category in POI " + p.id);
    p.category = *cat;
    p.node = pj.at("node").get<NodeId>();
    p.name = pj.value("name", "");
    if (pj.contains("attrs")) {
      for (const auto& [k, v] : pj["attrs"].items()) p.attrs[k] = attr_from_json(v);
    }
    // Schema check: exactly the mandated fields, valid rating and hours.
    const auto& fields = category_fields(p.category);
    if (p.attrs.size() != fields.size()) {
      throw PoiError("POI " + p.id + " has wrong attribute set for " +
                     category_name(p.category));
    }
    for (const FieldSpec& f : fields) {
      if (!p.attrs.count(f.name)) {
        throw PoiError("POI " + p.id + " missing attribute '" + f.name + "'");
      }
    }
    double r = p.rating();
    if (r < 0.0 || r > 5.0) throw PoiError("POI " + p.id + " rating out of [0,5]");
    open_at(std::get<std::string>(p.attrs.at("opening_hours")), 0);  // validates format
    c.pois.push_back(std::move(p));
  }
  return c;
}

}  // namespace wayplan
