#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wayplan/orchestrator.hpp"

namespace wayplan {

enum class VerdictStatus { Feasible, Infeasible, Relaxed };

struct ViolationEntry {
  GlobalMetric metric;
  double value;      // g_j
  double threshold;  // theta_j
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Feasible;
  std::vector<ViolationEntry> violations;
  // (metric, factor) pairs applied, in order.
  std::vector<std::pair<GlobalMetric, double>> relaxations;
  std::vector<std::string> notifications;
  int replan_rounds = 0;
};

struct VerifierConfig {
  double speed = 1.0;  // distance units per time unit; placeholder model
  std::vector<double> relaxation_ladder = {1.1, 1.25};
  int max_replan_rounds = 2;
};

// g_j for a metric: total_dist = cost.dist, total_time = cost.dist / speed,
// total_budget = sum of selected POI average_cost.
double global_metric_value(GlobalMetric metric, const RouteCandidate& candidate,
                           const PoiCatalog& catalog, const VerifierConfig& config = {});

// Boundary-inclusive check: feasible iff g_j <= theta_j for every global.
Verdict check_globals(const RouteCandidate& candidate, const std::vector<GlobalConstraint>& globals,
                      const PoiCatalog& catalog, const VerifierConfig& config = {});

// Rebuilds a candidate after a POI selection change; absent result means
// the re-planned pipeline is itself infeasible.
using ReplanFn = std::function<std::optional<RouteCandidate>(const std::vector<std::size_t>&)>;

struct RelaxOutcome {
  Verdict verdict;
  std::optional<RouteCandidate> revised;          // set when re-planning produced a new route
  std::optional<std::vector<std::size_t>> selection;  // POI selection of the revised route
};

// Non-critical violations: relax thresholds stepwise through the ladder,
// with a notification per applied factor. Critical violations: re-plan by
// advancing the most budget-expensive POI requirement to its next-ranked
// candidate, up to max_replan_rounds.
RelaxOutcome relax_or_replan(const RouteCandidate& candidate, const Verdict& verdict,
                             const ParsedIntent& intent, const PoiCatalog& catalog,
                             const std::vector<PoiChoice>& choices, const ReplanFn& replan,
                             const VerifierConfig& config = {});

// Deterministic comparative rationale per candidate: per-objective deltas
// against the top candidate, zero deltas suppressed.
std::vector<std::string> explain(const std::vector<RouteCandidate>& candidates);

}  // namespace wayplan
