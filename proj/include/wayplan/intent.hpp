#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "wayplan/poi.hpp"

namespace wayplan {

struct PoiRequirement {
  PoiCategory category = PoiCategory::Restaurant;
  std::vector<AttrFilter> filters;
  // OR-group: exactly one member is selected downstream.
  std::vector<PoiRequirement> alternatives;
  std::optional<int> fixed_position;

  bool operator==(const PoiRequirement&) const = default;
};

enum class ConstraintKind { AvoidAttrAbove, RequireAttrBelow, ForbidEdges };

struct HardPathConstraint {
  ConstraintKind kind = ConstraintKind::AvoidAttrAbove;
  Objective attribute = Objective::Toll;     // attribute-based kinds
  double threshold = 0.5;                    // in [0,1], attribute-based kinds
  std::vector<std::pair<NodeId, NodeId>> edges;  // ForbidEdges

  bool operator==(const HardPathConstraint&) const = default;
};

// Per-feature intensity: 0 = ignore, 0.5 = soft weight, 1 = hard requirement.
struct PreferenceVector {
  std::array<double, kNumObjectives> weights{};

  double& operator[](Objective o) { return weights[static_cast<std::size_t>(o)]; }
  double operator[](Objective o) const { return weights[static_cast<std::size_t>(o)]; }
  bool operator==(const PreferenceVector&) const = default;
};

enum class SpecialMode { Info, Modify };

struct SpecialRequirement {
  std::string topic;  // e.g. "weather", "road_block"
  SpecialMode mode = SpecialMode::Info;
  std::string note;                               // info payload
  std::optional<HardPathConstraint> constraint;   // modify payload

  bool operator==(const SpecialRequirement&) const = default;
};

enum class GlobalMetric { TotalDist, TotalTime, TotalBudget };

const char* metric_name(GlobalMetric m);
std::optional<GlobalMetric> metric_from_name(const std::string& name);

struct GlobalConstraint {
  GlobalMetric metric = GlobalMetric::TotalDist;
  double threshold = 0.0;  // > 0
  bool critical = false;

  bool operator==(const GlobalConstraint&) const = default;
};

struct ParsedIntent {
  Point start;
  Point end;
  bool loop = false;  // permits start == end
  std::vector<PoiRequirement> poi_stops;
  std::vector<HardPathConstraint> hard_constraints;
  PreferenceVector soft_prefs;
  std::vector<SpecialRequirement> specials;
  std::vector<GlobalConstraint> globals;

  bool operator==(const ParsedIntent&) const = default;
};

struct Violation {
  std::string path;  // e.g. "soft_prefs.scenic"
  std::string rule;
  std::string message;
};

struct ValidationResult {
  std::optional<ParsedIntent> intent;
  std::vector<Violation> violations;

  bool ok() const { return intent.has_value(); }
};

// Full schema validation; acceptance implies every invariant holds.
// Never partially accepts: any violation yields an empty intent.
ValidationResult validate_intent(const std::string& bytes);

// Canonical serialization; validate(serialize(x)) round-trips to x.
std::string serialize_intent(const ParsedIntent& intent);

// Search parameters derived from the preference vector.
struct SearchDerivation {
  std::set<Objective> active;                    // dist is always active
  std::array<double, kNumObjectives> weights{};  // zero outside the active set
  std::vector<HardPathConstraint> implied;       // from p = 1 entries
};

SearchDerivation derive_search_params(const PreferenceVector& prefs);

}  // namespace wayplan
