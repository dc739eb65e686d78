#pragma once

#include <string>
#include <vector>

#include "wayplan/verifier.hpp"

namespace wayplan {

// End-to-end artifact written by the route command.
struct RouteResult {
  std::string query;  // empty when planning from an intent file
  ParsedIntent intent;
  std::vector<RouteCandidate> candidates;
  std::vector<Verdict> verdicts;    // parallel to candidates
  std::vector<std::string> rationales;  // parallel to candidates
  int chosen = 0;  // index into candidates when non-empty
  std::vector<std::string> notes;
};

const char* verdict_status_name(VerdictStatus s);

// Canonical byte-stable serialization (sorted keys, fixed number format).
// No timings by default so identical inputs yield identical bytes.
std::string serialize_result(const RouteResult& result);

// Failure artifact for infeasible plans / parse failures; same stability
// guarantees.
std::string serialize_plan_failure(const std::string& query, const PlanFailure& failure);
std::string serialize_parse_failure(const std::string& query,
                                    const std::vector<Violation>& diagnostics, int attempts);

}  // namespace wayplan
