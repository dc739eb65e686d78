#pragma once

#include <optional>
#include <string>

#include "wayplan/intent.hpp"

namespace wayplan {

struct ParserError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class BackendKind { Rule, Remote };

struct RemoteConfig {
  std::string endpoint = "http://localhost:8080";  // chat-completions base URL
  std::string path = "/v1/chat/completions";
  std::string model = "default";
  std::string api_key_env = "WAYPLAN_API_KEY";
  int retry_budget = 3;  // >= 1; re-prompt with validation errors
  int timeout_seconds = 60;
  double temperature = 0.0;
  std::string transcript_path;  // JSONL audit log when non-empty
};

struct ParserBackend {
  BackendKind kind = BackendKind::Rule;
  RemoteConfig remote;
};

struct ParseOutcome {
  std::optional<ParsedIntent> intent;  // present iff schema_valid
  int attempts = 1;
  bool schema_valid = false;
  std::vector<Violation> diagnostics;  // from the last attempt
};

// Context handed to the parser for prompt construction (remote backend).
struct ParseContext {
  int map_width = 50;
  int map_height = 30;
};

// Deterministic pure-function grammar over the benchmark query templates.
// The context supplies the grid width for resolving edge coordinates in
// road-block phrases.
ParseOutcome parse_rule(const std::string& query, const ParseContext& context = {});

// Sends a structured prompt to a chat-completions endpoint, validates the
// reply, and re-prompts with the violation list up to the retry budget.
// Never returns an invalid intent as valid.
ParseOutcome parse_remote(const std::string& query, const RemoteConfig& config,
                          const ParseContext& context);

ParseOutcome parse(const std::string& query, const ParserBackend& backend,
                   const ParseContext& context = {});

// Keyword/negation preference rules: strong markers -> 1, hedged -> 0.5,
// unmentioned -> 0.
PreferenceVector extract_preferences(const std::string& query);

}  // namespace wayplan
