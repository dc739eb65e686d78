#include <doctest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "wayplan/parser.hpp"

using namespace wayplan;

TEST_CASE("rule parser: coordinates and empty preferences") {
  auto out = parse_rule("Shortest route from (0,0) to (10,8), please.");
  REQUIRE(out.schema_valid);
  const ParsedIntent& in = *out.intent;
  CHECK(in.start == Point{0, 0});
  CHECK(in.end == Point{10, 8});
  CHECK(in.poi_stops.empty());
  CHECK(in.soft_prefs == PreferenceVector{});
}

TEST_CASE("rule parser: preference intensity scale") {
  auto strong = parse_rule("From (1,1) to (9,9). I must avoid tolls.");
  REQUIRE(strong.schema_valid);
  CHECK(strong.intent->soft_prefs[Objective::Toll] == 1.0);

  auto hedged = parse_rule("From (1,1) to (9,9). I would like a scenic route if possible.");
  REQUIRE(hedged.schema_valid);
  CHECK(hedged.intent->soft_prefs[Objective::Scenic] == 0.5);
  CHECK(hedged.intent->soft_prefs[Objective::Toll] == 0.0);

  auto safe = parse_rule("From (1,1) to (9,9). The route absolutely has to be safe.");
  REQUIRE(safe.schema_valid);
  CHECK(safe.intent->soft_prefs[Objective::Danger] == 1.0);
}

TEST_CASE("rule parser: POI stop with filters") {
  auto out = parse_rule(
      "Route me from (2,3) to (40,20). I'd like to stop at an Italian restaurant "
      "rated at least 4.0 stars, ideally vegetarian friendly and under $60.");
  REQUIRE(out.schema_valid);
  REQUIRE(out.intent->poi_stops.size() == 1);
  const PoiRequirement& stop = out.intent->poi_stops[0];
  CHECK(stop.category == PoiCategory::Restaurant);
  auto has = [&](const AttrFilter& f) {
    return std::find(stop.filters.begin(), stop.filters.end(), f) != stop.filters.end();
  };
  CHECK(has({"cuisine", FilterOp::Eq, std::string("Italian")}));
  CHECK(has({"rating", FilterOp::Ge, 4.0}));
  CHECK(has({"is_vegetarian_friendly", FilterOp::Eq, true}));
  CHECK(has({"average_cost", FilterOp::Le, std::int64_t(60)}));
}

TEST_CASE("rule parser: or-groups and sequencing") {
  auto out = parse_rule(
      "From (0,0) to (19,9). First stop at a gym with a pool, then a quiet coffee shop "
      "or a park with free entry.");
  REQUIRE(out.schema_valid);
  REQUIRE(out.intent->poi_stops.size() == 2);
  CHECK(out.intent->poi_stops[0].category == PoiCategory::Gym);
  CHECK(out.intent->poi_stops[0].fixed_position == 0);
  const PoiRequirement& group = out.intent->poi_stops[1];
  REQUIRE(group.alternatives.size() == 2);
  CHECK(group.alternatives[0].category == PoiCategory::CoffeeShop);
  CHECK(group.alternatives[1].category == PoiCategory::Park);
  CHECK(group.alternatives[1].filters ==
        std::vector<AttrFilter>{{"has_entry_fee", FilterOp::Eq, false}});
}

TEST_CASE("rule parser: specials, globals and hard constraints") {
  auto out = parse_rule(
      "From (0,0) to (30,20), but the road between (3,4) and (4,4) is closed. "
      "Check the weather before I go. My budget is $80 and that is a hard limit. "
      "Keep danger below 0.3. I should arrive within 90 minutes.",
      ParseContext{50, 30});
  REQUIRE(out.schema_valid);
  const ParsedIntent& in = *out.intent;

  REQUIRE(in.specials.size() == 2);
  CHECK(in.specials[0].topic == "road_block");
  CHECK(in.specials[0].mode == SpecialMode::Modify);
  REQUIRE(in.specials[0].constraint.has_value());
  CHECK(in.specials[0].constraint->edges ==
        std::vector<std::pair<NodeId, NodeId>>{{4 * 50 + 3, 4 * 50 + 4}});
  CHECK(in.specials[1].topic == "weather");
  CHECK(in.specials[1].mode == SpecialMode::Info);

  REQUIRE(in.globals.size() == 2);
  CHECK(in.globals[0].metric == GlobalMetric::TotalBudget);
  CHECK(in.globals[0].threshold == 80.0);
  CHECK(in.globals[0].critical);
  CHECK(in.globals[1].metric == GlobalMetric::TotalTime);
  CHECK(in.globals[1].threshold == 90.0);
  CHECK_FALSE(in.globals[1].critical);

  REQUIRE(in.hard_constraints.size() == 1);
  CHECK(in.hard_constraints[0].kind == ConstraintKind::AvoidAttrAbove);
  CHECK(in.hard_constraints[0].attribute == Objective::Danger);
  CHECK(in.hard_constraints[0].threshold == 0.3);
}

TEST_CASE("rule parser never returns an invalid intent") {
  auto missing = parse_rule("please just get me there");
  CHECK_FALSE(missing.schema_valid);
  CHECK_FALSE(missing.intent.has_value());
  CHECK_FALSE(missing.diagnostics.empty());

  auto empty = parse_rule("");
  CHECK_FALSE(empty.schema_valid);

  // Start == end without loop fails schema validation downstream too.
  auto degenerate = parse_rule("From (2,2) to (2,2).");
  CHECK_FALSE(degenerate.schema_valid);
}

namespace {

// Minimal chat-completions stub; replies are scripted per attempt.
struct StubServer {
  httplib::Server svr;
  std::thread thread;
  int port = 0;
  std::atomic<int> calls{0};
  std::vector<std::string> replies;
  std::vector<std::string> seen_user_messages;

  explicit StubServer(std::vector<std::string> scripted) : replies(std::move(scripted)) {
    svr.Post("/v1/chat/completions", [this](const httplib::Request& req,
                                            httplib::Response& res) {
      auto body = nlohmann::json::parse(req.body);
      for (const auto& m : body["messages"]) {
        if (m["role"] == "user") {
          seen_user_messages.push_back(m["content"].get<std::string>());
        }
      }
      int i = std::min<int>(calls++, int(replies.size()) - 1);
      nlohmann::json out = {
          {"choices", {{{"message", {{"role", "assistant"}, {"content", replies[i]}}}}}}};
      res.set_content(out.dump(), "application/json");
    });
    port = svr.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { svr.listen_after_bind(); });
    svr.wait_until_ready();
  }
  ~StubServer() {
    svr.stop();
    thread.join();
  }
  RemoteConfig config(int budget = 3) const {
    RemoteConfig cfg;
    cfg.endpoint = "http://127.0.0.1:" + std::to_string(port);
    cfg.retry_budget = budget;
    cfg.timeout_seconds = 5;
    return cfg;
  }
};

const char* kValidIntent =
    R"({"end":{"x":9,"y":9},"globals":[],"hard_constraints":[],"poi_stops":[],)"
    R"("soft_prefs":{"toll":1},"specials":[],"start":{"x":1,"y":1},"version":1})";

}  // namespace

TEST_CASE("remote parser accepts a valid first reply") {
  StubServer stub({std::string("```json\n") + kValidIntent + "\n```"});
  auto out = parse_remote("from (1,1) to (9,9), no tolls", stub.config(), ParseContext{});
  REQUIRE(out.schema_valid);
  CHECK(out.attempts == 1);
  CHECK(out.intent->soft_prefs[Objective::Toll] == 1.0);
}

TEST_CASE("remote parser re-prompts with the violation list") {
  std::string broken =
      R"({"end":{"x":9,"y":9},"soft_prefs":{"toll":0.7},"start":{"x":1,"y":1},"version":1})";
  StubServer stub({broken, kValidIntent});
  auto out = parse_remote("query", stub.config(), ParseContext{});
  REQUIRE(out.schema_valid);
  CHECK(out.attempts == 2);
  // The repair prompt quotes the violation path back to the model.
  REQUIRE(stub.seen_user_messages.size() >= 3);  // initial, initial again, repair
  bool quoted = false;
  for (const auto& m : stub.seen_user_messages) {
    if (m.find("soft_prefs.toll") != std::string::npos) quoted = true;
  }
  CHECK(quoted);
}

TEST_CASE("remote parser exhausts its retry budget without going invalid") {
  StubServer stub({"gibberish, not json"});
  auto out = parse_remote("query", stub.config(2), ParseContext{});
  CHECK_FALSE(out.schema_valid);
  CHECK_FALSE(out.intent.has_value());
  CHECK(out.attempts == 2);
  CHECK_FALSE(out.diagnostics.empty());
  CHECK(stub.calls == 2);
}

TEST_CASE("remote parser surfaces transport failures") {
  RemoteConfig cfg;
  cfg.endpoint = "http://127.0.0.1:9";  // discard port; nothing listens
  cfg.retry_budget = 2;
  cfg.timeout_seconds = 1;
  CHECK_THROWS_AS(parse_remote("query", cfg, ParseContext{}), ParserError);
}
