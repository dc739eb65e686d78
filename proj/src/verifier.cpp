#include "wayplan/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wayplan/ioutil.hpp"

namespace wayplan {

namespace {

bool is_critical(GlobalMetric metric, const std::vector<GlobalConstraint>& globals) {
  for (const GlobalConstraint& g : globals) {
    if (g.metric == metric && g.critical) return true;
  }
  return false;
}

std::string option_label(std::size_t i) {
  std::string label = "Option ";
  label += static_cast<char>('A' + (i % 26));
  return label;
}

}  // namespace

double global_metric_value(GlobalMetric metric, const RouteCandidate& candidate,
                           const PoiCatalog& catalog, const VerifierConfig& config) {
  switch (metric) {
    case GlobalMetric::TotalDist:
      return candidate.cost.dist();
    case GlobalMetric::TotalTime:
      return candidate.cost.dist() / config.speed;
    case GlobalMetric::TotalBudget: {
      double total = 0.0;
      for (const Stop& s : candidate.waypoints) {
        if (s.poi_id.empty()) continue;
        if (const PoiRecord* p = catalog.find(s.poi_id)) {
          total += static_cast<double>(p->average_cost());
        }
      }
      return total;
    }
  }
  throw PoiError("unknown global metric");
}

Verdict check_globals(const RouteCandidate& candidate,
                      const std::vector<GlobalConstraint>& globals, const PoiCatalog& catalog,
                      const VerifierConfig& config) {
  Verdict v;
  for (const GlobalConstraint& g : globals) {
    double value = global_metric_value(g.metric, candidate, catalog, config);
    if (value > g.threshold) {
      v.violations.push_back(ViolationEntry{g.metric, value, g.threshold});
    }
  }
  v.status = v.violations.empty() ? VerdictStatus::Feasible : VerdictStatus::Infeasible;
  return v;
}

RelaxOutcome relax_or_replan(const RouteCandidate& candidate, const Verdict& verdict,
                             const ParsedIntent& intent, const PoiCatalog& catalog,
                             const std::vector<PoiChoice>& choices, const ReplanFn& replan,
                             const VerifierConfig& config) {
  RelaxOutcome out;
  out.verdict = verdict;
  if (verdict.status != VerdictStatus::Infeasible) return out;

  RouteCandidate current = candidate;
  Verdict v = verdict;
  std::vector<std::size_t> selection;
  for (const PoiChoice& c : choices) selection.push_back(c.selected);

  auto has_critical = [&](const Verdict& vd) {
    return std::any_of(vd.violations.begin(), vd.violations.end(), [&](const ViolationEntry& e) {
      return is_critical(e.metric, intent.globals);
    });
  };

  // Critical violations trigger re-planning: drop the selected POI of the
  // most budget-expensive requirement in favor of its next-ranked candidate.
  int rounds = 0;
  while (has_critical(v) && rounds < config.max_replan_rounds && replan) {
    int worst = -1;
    std::int64_t worst_cost = -1;
    for (std::size_t i = 0; i < choices.size(); ++i) {
      if (selection[i] + 1 >= choices[i].ranked.size()) continue;  // exhausted
      std::int64_t cost = choices[i].ranked[selection[i]].average_cost();
      if (cost > worst_cost) {
        worst_cost = cost;
        worst = static_cast<int>(i);
      }
    }
    if (worst < 0) break;
    ++selection[static_cast<std::size_t>(worst)];
    ++rounds;
    auto revised = replan(selection);
    if (!revised) continue;  // that alternative is unroutable; advance again
    current = *revised;
    v = check_globals(current, intent.globals, catalog, config);
    out.revised = current;
    out.selection = selection;
  }
  v.replan_rounds = rounds;

  if (has_critical(v)) {
    // Critical constraints are never relaxed.
    v.status = VerdictStatus::Infeasible;
    out.verdict = v;
    return out;
  }

  // Remaining violations are non-critical: walk the relaxation ladder.
  std::vector<ViolationEntry> unrelaxable;
  for (const ViolationEntry& e : v.violations) {
    bool relaxed = false;
    for (double factor : config.relaxation_ladder) {
      if (e.value <= factor * e.threshold) {
        v.relaxations.emplace_back(e.metric, factor);
        std::ostringstream note;
        note << "relaxed " << metric_name(e.metric) << " threshold by factor " << factor
             << " (" << fmt2(e.threshold) << " -> " << fmt2(factor * e.threshold) << ")";
        v.notifications.push_back(note.str());
        relaxed = true;
        break;
      }
    }
    if (!relaxed) unrelaxable.push_back(e);
  }
  if (!unrelaxable.empty()) {
    v.status = VerdictStatus::Infeasible;
  } else if (!v.relaxations.empty()) {
    v.status = VerdictStatus::Relaxed;
  } else {
    v.status = VerdictStatus::Feasible;
  }
  out.verdict = v;
  return out;
}

std::vector<std::string> explain(const std::vector<RouteCandidate>& candidates) {
  std::vector<std::string> out;
  if (candidates.empty()) return out;

  const CostVector& base = candidates[0].cost;
  {
    std::ostringstream s;
    s << option_label(0) << " (recommended):";
    for (std::size_t a = 0; a < kNumObjectives; ++a) {
      s << (a ? ", " : " ") << kObjectiveNames[a] << " " << fmt2(base.at(a));
    }
    out.push_back(s.str());
  }
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const CostVector& c = candidates[i].cost;
    std::ostringstream s;
    s << option_label(i) << " vs " << option_label(0) << ":";
    bool any = false;
    for (std::size_t a = 0; a < kNumObjectives; ++a) {
      double delta = c.at(a) - base.at(a);
      if (std::abs(delta) < 5e-3) continue;  // below display precision
      s << (any ? "; " : " ");
      any = true;
      if (a == 0) {
        s << "is " << fmt2(std::abs(delta)) << " units " << (delta > 0 ? "longer" : "shorter");
      } else {
        s << (delta > 0 ? "increases " : "reduces ") << kObjectiveNames[a] << " cost by "
          << fmt2(std::abs(delta));
      }
      s << " (" << fmt2(base.at(a)) << " -> " << fmt2(c.at(a)) << ")";
    }
    if (!any) s << " matches " << option_label(0) << " on every objective";
    out.push_back(s.str());
  }
  return out;
}

}  // namespace wayplan
