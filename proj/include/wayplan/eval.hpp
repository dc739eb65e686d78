#pragma once

#include <string>
#include <vector>

#include "wayplan/orchestrator.hpp"
#include "wayplan/parser.hpp"

namespace wayplan {

enum class Difficulty { Simple, Medium, Hard };

const char* difficulty_name(Difficulty d);
std::optional<Difficulty> difficulty_from_name(const std::string& name);

struct BenchQuery {
  std::string id;
  Difficulty difficulty = Difficulty::Simple;
  std::string text;
  ParsedIntent gold;
};

// One BenchQuery per line; gold documents are fully validated. Stop counts
// must respect the tier limits (2 simple / 3 medium / 5 hard).
std::vector<BenchQuery> load_corpus(const std::string& bytes);
std::string save_corpus(const std::vector<BenchQuery>& corpus);

struct QueryScore {
  double poi_f1 = 0.0;
  double const_f1 = 0.0;
  double pref_f1 = 0.0;
  bool schema_valid = false;
};

struct ParseScore {
  double poi_f1 = 0.0;
  double const_f1 = 0.0;
  double pref_f1 = 0.0;
  double struct_rate = 0.0;
  double overall_f1 = 0.0;  // mean of the three component scores
};

// Multiset F1 per component after canonicalization; schema-invalid
// predictions score zero everywhere.
QueryScore score_parse(const ParseOutcome& pred, const ParsedIntent& gold);

// Per-query macro-average; struct_rate is the schema-valid fraction.
ParseScore aggregate(const std::vector<QueryScore>& scores);

std::string score_report_json(const ParseScore& score,
                              const std::vector<std::pair<std::string, QueryScore>>& per_query);
std::string score_report_text(const ParseScore& score);

struct ScenarioRow {
  std::string name;
  bool feasible = false;
  CostVector cost;
  std::string message;  // failure detail when infeasible
};

// Scalarized top-1 route per scenario; scenarios must share start/end/stops
// and differ only in preferences.
std::vector<ScenarioRow> scenario_table(const RouteGraph& graph, const PoiCatalog& catalog,
                                        const std::vector<std::pair<std::string, ParsedIntent>>&
                                            scenarios);

std::string scenario_csv(const std::vector<ScenarioRow>& rows);
std::string scenario_text(const std::vector<ScenarioRow>& rows);

}  // namespace wayplan
