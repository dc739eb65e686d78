#include <algorithm>
#include <cctype>
#include <regex>

#include "wayplan/parser.hpp"

namespace wayplan {

namespace {

std::string lowercase(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const std::vector<std::string> kStrongMarkers = {
    "must", "really need", "have to", "absolutely", "definitely",
    "strictly", "insist", "essential", "need to", "really prefer"};

const std::vector<std::string> kHedgedMarkers = {
    "prefer", "would like", "'d like", "would love", "ideally",
    "if possible", "would be nice", "hopefully", "like to", "not in a huge rush"};

struct FeatureKeywords {
  Objective feature;
  std::vector<std::string> keywords;
};

// "shortest route" alone is the routing verb, not a preference, so the dist
// entries are explicit preference phrasings only.
const std::vector<FeatureKeywords> kFeatureTable = {
    {Objective::Scenic, {"scenic", "scenery", "picturesque", "beautiful view"}},
    {Objective::Danger, {"safe", "well-lit", "well lit", "danger"}},
    {Objective::Energy, {"energy", "low effort"}},
    {Objective::Slope, {"flat", "steep", "slope", "hills"}},
    {Objective::Toll, {"toll"}},
    {Objective::Dist,
     {"as short as possible", "short route", "quick route", "direct route",
      "minimal distance"}},
};

// A '.' between two digits is a decimal point, not a clause separator.
bool is_separator(const std::string& text, std::size_t i, const std::string& seps) {
  if (seps.find(text[i]) == std::string::npos) return false;
  if (text[i] == '.' && i > 0 && i + 1 < text.size() &&
      std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
      std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
    return false;
  }
  return true;
}

// Clause containing position p: text between the surrounding punctuation.
std::string clause_around(const std::string& text, std::size_t p) {
  static const std::string seps = ".;,";
  std::size_t begin = 0;
  for (std::size_t i = p; i-- > 0;) {
    if (is_separator(text, i, seps)) {
      begin = i + 1;
      break;
    }
  }
  std::size_t endpos = text.size();
  for (std::size_t i = p; i < text.size(); ++i) {
    if (is_separator(text, i, seps)) {
      endpos = i;
      break;
    }
  }
  return text.substr(begin, endpos - begin);
}

double marker_intensity(const std::string& clause) {
  for (const auto& m : kStrongMarkers) {
    if (contains(clause, m)) return 1.0;
  }
  for (const auto& m : kHedgedMarkers) {
    if (contains(clause, m)) return 0.5;
  }
  return 0.5;  // mentioned without a marker: moderate
}

std::optional<Point> find_coord(const std::string& lower, const std::regex& re) {
  std::smatch m;
  if (!std::regex_search(lower, m, re)) return std::nullopt;
  return Point{double(std::stoi(m[1])), double(std::stoi(m[2]))};
}

std::vector<std::string> split_clauses(const std::string& lower) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    char c = lower[i];
    if (is_separator(lower, i, ".;,!?")) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::optional<PoiCategory> clause_category(const std::string& clause) {
  if (contains(clause, "restaurant")) return PoiCategory::Restaurant;
  if (contains(clause, "coffee shop") || contains(clause, "cafe")) {
    return PoiCategory::CoffeeShop;
  }
  if (contains(clause, "gym")) return PoiCategory::Gym;
  if (contains(clause, "park")) return PoiCategory::Park;
  return std::nullopt;
}

void add_filter(PoiRequirement& req, AttrFilter f) {
  try {
    check_filter(req.category, f);
  } catch (const PoiError&) {
    return;  // attribute phrase does not apply to this category
  }
  if (std::find(req.filters.begin(), req.filters.end(), f) == req.filters.end()) {
    req.filters.push_back(std::move(f));
  }
}

void scan_attribute_phrases(const std::string& clause, PoiRequirement& req) {
  static const std::regex rating_re(
      R"((?:rated |rating (?:of )?)?at least (\d(?:\.\d)?)(?: stars?)?)");
  static const std::regex stars_re(R"((\d(?:\.\d)?) stars? or (?:higher|better|more))");
  static const std::regex cost_re(R"((?:under|at most|cheaper than|below|max) \$?(\d+))");
  static const std::regex open_re(R"(open (?:at|around) (\d{1,2}:\d{2}))");

  std::smatch m;
  if (std::regex_search(clause, m, stars_re) ||
      (std::regex_search(clause, m, rating_re) &&
       (contains(clause, "star") || contains(clause, "rat")))) {
    add_filter(req, AttrFilter{"rating", FilterOp::Ge, std::stod(m[1])});
  }
  for (const std::string& cuisine : kCuisines) {
    if (contains(clause, lowercase(cuisine))) {
      add_filter(req, AttrFilter{"cuisine", FilterOp::Eq, cuisine});
      break;
    }
  }
  if (contains(clause, "vegetarian")) {
    add_filter(req, AttrFilter{"is_vegetarian_friendly", FilterOp::Eq, true});
  }
  if (contains(clause, "work-friendly") || contains(clause, "work friendly") ||
      contains(clause, "wifi") || contains(clause, "quiet")) {
    add_filter(req, AttrFilter{"is_work_friendly", FilterOp::Eq, true});
  }
  if (contains(clause, "pool")) {
    add_filter(req, AttrFilter{"has_swimming_pool", FilterOp::Eq, true});
  }
  if (contains(clause, "free entry") || contains(clause, "no entry fee") ||
      contains(clause, "without an entry fee")) {
    add_filter(req, AttrFilter{"has_entry_fee", FilterOp::Eq, false});
  }
  // Price caps only; totals ("budget"), durations ("minutes") and edge
  // attribute bounds ("keep ... below") are handled elsewhere.
  if (!contains(clause, "budget") && !contains(clause, "minute") &&
      !contains(clause, "keep") && std::regex_search(clause, m, cost_re)) {
    add_filter(req, AttrFilter{"average_cost", FilterOp::Le, std::int64_t(std::stoll(m[1]))});
  }
  if (std::regex_search(clause, m, open_re)) {
    std::string t = m[1];
    if (t.size() == 4) t = "0" + t;
    add_filter(req, AttrFilter{"opening_hours", FilterOp::OpenAt, t});
  }
}

}  // namespace

PreferenceVector extract_preferences(const std::string& query) {
  PreferenceVector prefs;
  const std::string lower = lowercase(query);
  for (const auto& [feature, keywords] : kFeatureTable) {
    for (const std::string& kw : keywords) {
      std::size_t p = lower.find(kw);
      if (p == std::string::npos) continue;
      double intensity = marker_intensity(clause_around(lower, p));
      auto idx = static_cast<std::size_t>(feature);
      prefs.weights[idx] = std::max(prefs.weights[idx], intensity);
    }
  }
  return prefs;
}

ParseOutcome parse_rule(const std::string& query, const ParseContext& context) {
  ParseOutcome outcome;
  if (query.empty()) {
    outcome.diagnostics.push_back({"", "non_empty", "query is empty"});
    return outcome;
  }
  const std::string lower = lowercase(query);
  ParsedIntent intent;

  static const std::regex start_re(
      R"((?:from|start(?:ing)? at|begin at|leave from|depart from) \((\d+)\s*,\s*(\d+)\))");
  static const std::regex end_re(
      R"((?:to|end(?:ing)? (?:up )?at|finish at|arrive at|head(?:ing)? to|back to) \((\d+)\s*,\s*(\d+)\))");
  auto start = find_coord(lower, start_re);
  if (!start) {
    outcome.diagnostics.push_back({"start", "required", "could not locate start coordinates"});
    return outcome;
  }
  // The end coordinate is the last "to (x,y)"-style match so that a leading
  // "from (a) to (b)" pair wins over intermediate mentions.
  std::optional<Point> end;
  for (auto it = std::sregex_iterator(lower.begin(), lower.end(), end_re);
       it != std::sregex_iterator(); ++it) {
    Point p{double(std::stoi((*it)[1])), double(std::stoi((*it)[2]))};
    if (!(p == *start)) end = p;
  }
  if (!end) {
    outcome.diagnostics.push_back({"end", "required", "could not locate end coordinates"});
    return outcome;
  }
  intent.start = *start;
  intent.end = *end;

  // Specials: road blocks modify constraints, weather is informational.
  static const std::regex block_re(
      R"((?:road|street|edge) between \((\d+)\s*,\s*(\d+)\) and \((\d+)\s*,\s*(\d+)\) is (?:closed|blocked|flooded))");
  for (auto it = std::sregex_iterator(lower.begin(), lower.end(), block_re);
       it != std::sregex_iterator(); ++it) {
    NodeId u = std::stoi((*it)[2]) * context.map_width + std::stoi((*it)[1]);
    NodeId v = std::stoi((*it)[4]) * context.map_width + std::stoi((*it)[3]);
    HardPathConstraint hc{ConstraintKind::ForbidEdges, Objective::Dist, 0.0, {{u, v}}};
    intent.specials.push_back(
        SpecialRequirement{"road_block", SpecialMode::Modify, "", hc});
  }
  if (contains(lower, "weather")) {
    intent.specials.push_back(SpecialRequirement{
        "weather", SpecialMode::Info, "check current weather conditions before departing",
        std::nullopt});
  }

  // Globals.
  static const std::regex budget_re(R"(budget (?:is |of )?(?:around |about )?\$?(\d+))");
  static const std::regex dist_re(
    R"((?:no more than|within|at most|under) (\d+(?:\.\d+)?) (?:distance units|units))");
  static const std::regex time_re(R"((?:within|under|in at most) (\d+) minutes)");
  std::smatch m;
  auto critical_near = [&](std::size_t pos) {
    std::string clause = clause_around(lower, pos);
    return contains(clause, "hard limit") || contains(clause, "non-negotiable") ||
           contains(clause, "absolute");
  };
  if (std::regex_search(lower, m, budget_re)) {
    intent.globals.push_back(GlobalConstraint{GlobalMetric::TotalBudget, std::stod(m[1]),
                                              critical_near(std::size_t(m.position(0)))});
  }
  if (std::regex_search(lower, m, dist_re)) {
    intent.globals.push_back(GlobalConstraint{GlobalMetric::TotalDist, std::stod(m[1]),
                                              critical_near(std::size_t(m.position(0)))});
  }
  if (std::regex_search(lower, m, time_re)) {
    intent.globals.push_back(GlobalConstraint{GlobalMetric::TotalTime, std::stod(m[1]),
                                              critical_near(std::size_t(m.position(0)))});
  }

  // Explicit edge-level hard constraints: "keep danger below 0.3".
  static const std::regex keep_re(
      R"(keep (?:the )?(dist|scenic|energy|danger|slope|toll)(?: cost| level)? below (\d+(?:\.\d+)?))");
  for (auto it = std::sregex_iterator(lower.begin(), lower.end(), keep_re);
       it != std::sregex_iterator(); ++it) {
    auto attr = objective_from_name((*it)[1].str());
    intent.hard_constraints.push_back(
        HardPathConstraint{ConstraintKind::AvoidAttrAbove, *attr, std::stod((*it)[2]), {}});
  }

  // POI stops, clause by clause; attribute phrases attach to the most
  // recent stop when their own clause names no category.
  bool sequenced = std::regex_search(lower, std::regex(R"(\bthen\b|\bafter\b|\bfirst\b)"));
  for (const std::string& clause : split_clauses(lower)) {
    auto or_pos = clause.find(" or ");
    if (or_pos != std::string::npos) {
      std::string left = clause.substr(0, or_pos);
      std::string right = clause.substr(or_pos + 4);
      auto cat_l = clause_category(left);
      auto cat_r = clause_category(right);
      if (cat_l && cat_r) {
        PoiRequirement a;
        a.category = *cat_l;
        scan_attribute_phrases(left, a);
        PoiRequirement b;
        b.category = *cat_r;
        scan_attribute_phrases(right, b);
        PoiRequirement group;
        group.category = *cat_l;
        group.alternatives = {std::move(a), std::move(b)};
        intent.poi_stops.push_back(std::move(group));
        continue;
      }
    }
    auto cat = clause_category(clause);
    if (cat) {
      PoiRequirement req;
      req.category = *cat;
      scan_attribute_phrases(clause, req);
      intent.poi_stops.push_back(std::move(req));
    } else if (!intent.poi_stops.empty()) {
      scan_attribute_phrases(clause, intent.poi_stops.back());
    }
  }
  if (sequenced) {
    for (std::size_t i = 0; i < intent.poi_stops.size(); ++i) {
      intent.poi_stops[i].fixed_position = static_cast<int>(i);
    }
  }

  intent.soft_prefs = extract_preferences(query);

  // Round-trip through the validator so the outcome can never carry an
  // intent the schema would reject.
  ValidationResult check = validate_intent(serialize_intent(intent));
  outcome.schema_valid = check.ok();
  outcome.diagnostics = check.violations;
  if (check.ok()) outcome.intent = std::move(check.intent);
  return outcome;
}

ParseOutcome parse(const std::string& query, const ParserBackend& backend,
                   const ParseContext& context) {
  if (query.empty()) throw ParserError("query must be non-empty");
  if (backend.kind == BackendKind::Rule) return parse_rule(query, context);
  return parse_remote(query, backend.remote, context);
}

}  // namespace wayplan
