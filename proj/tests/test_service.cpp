#include <gtest/gtest.h>

#include <chrono>
#include <future>

#include "cel/service.hpp"
#include "httplib.h"
#include "json.hpp"
#include "test_support.hpp"

namespace cel {
namespace {

using nlohmann::json;

class Service : public ::testing::Test {
 protected:
  testing::LoadedKb family = testing::load_family();
  Reasoner reasoner{family.kb, family.hierarchy};
  LearningService service{family.kb, family.hierarchy, reasoner};

  static json problem(std::vector<std::string> pos, std::vector<std::string> neg) {
    json lp;
    for (auto& p : pos) p = std::string(testing::kFamilyNs) + p;
    for (auto& n : neg) n = std::string(testing::kFamilyNs) + n;
    lp["positive_examples"] = pos;
    lp["negative_examples"] = neg;
    return lp;
  }
  static json married_female() { return problem({"F10F172", "F10F179", "F10F174"}, {"F10F177", "F10F175"}); }
};

TEST_F(Service, LearnsMarriedFemale) {
  const HttpResponse r = service.handle_learn(json{{"learning_problem", married_female()}}.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  const json body = json::parse(r.body);
  EXPECT_EQ(body["hypotheses"][0]["f1"], 1.0);
  EXPECT_EQ(body["stats"]["learner"], "celoe");
  EXPECT_TRUE(body["stats"].contains("nodes_expanded"));
  EXPECT_TRUE(body["stats"].contains("wall_ms"));
}

TEST_F(Service, EvoLearnerWithConfig) {
  const json request = {{"learning_problem", married_female()},
                        {"learner", "evo"},
                        {"config", {{"seed", 3}, {"generations", 20}, {"emit_sparql", true}}}};
  const HttpResponse r = service.handle_learn(request.dump());
  ASSERT_EQ(r.status, 200) << r.body;
  const json body = json::parse(r.body);
  EXPECT_EQ(body["hypotheses"][0]["f1"], 1.0);
  EXPECT_TRUE(body["hypotheses"][0].contains("sparql"));
  EXPECT_TRUE(body["stats"].contains("generations"));
  EXPECT_EQ(json::parse(service.handle_learn(request.dump()).body)["hypotheses"], body["hypotheses"]);
}

TEST_F(Service, SchemaViolationsNameTheField) {
  const auto field_of = [&](const std::string& body) {
    const HttpResponse r = service.handle_learn(body);
    EXPECT_EQ(r.status, 400) << body;
    return json::parse(r.body).value("field", std::string("<none>"));
  };
  EXPECT_EQ(field_of(json{{"learning_problem", problem({"F10F172"}, {"F10F172"})}}.dump()),
            "learning_problem.negative_examples");
  EXPECT_EQ(field_of(json{{"learning_problem", problem({}, {"F10F172"})}}.dump()), "learning_problem.positive_examples");
  EXPECT_EQ(field_of("{}"), "learning_problem");
  EXPECT_EQ(field_of("not json"), "body");
  EXPECT_EQ(field_of("[1]"), "body");
  EXPECT_EQ(field_of(json{{"learning_problem", married_female()}, {"colour", "red"}}.dump()), "colour");
  EXPECT_EQ(field_of(json{{"learning_problem", married_female()}, {"learner", "drill"}}.dump()), "learner");
  EXPECT_EQ(field_of(json{{"learning_problem", married_female()}, {"config", {{"top_k", 0}}}}.dump()), "config.top_k");
  EXPECT_EQ(field_of(json{{"learning_problem", married_female()}, {"config", {{"bogus", 1}}}}.dump()), "config.bogus");
}

TEST_F(Service, UnknownExampleIsUnprocessable) {
  const HttpResponse r = service.handle_learn(json{{"learning_problem", problem({"F10F172", "Nobody"}, {})}}.dump());
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(json::parse(r.body)["iri"], std::string(testing::kFamilyNs) + "Nobody");
}

TEST_F(Service, HealthReportsCounts) {
  const HttpResponse r = service.handle_health();
  EXPECT_EQ(r.status, 200);
  const json body = json::parse(r.body);
  EXPECT_EQ(body["individuals"], 8);
  EXPECT_EQ(body["classes"], 18);
  EXPECT_EQ(body["roles"], 1);
}

TEST_F(Service, HealthAnswersDuringLongLearn) {
  ServiceOptions options;
  options.max_runtime_seconds = 2.5;
  LearningService slow(family.kb, family.hierarchy, reasoner, options);
  const int port = slow.start("127.0.0.1", 0);
  ASSERT_GT(port, 0);

  const json request = {{"learning_problem", married_female()},
                        {"config", {{"quality_threshold", 2.0}, {"max_iterations", 100000000}}}};
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto learn = std::async(std::launch::async, [&] {
    httplib::Client client("127.0.0.1", port);
    client.set_read_timeout(60, 0);
    return client.Post("/learn", request.dump(), "application/json");
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(300));

  httplib::Client probe("127.0.0.1", port);
  const auto before = Clock::now();
  const auto health = probe.Get("/health");
  const auto health_latency = Clock::now() - before;
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_LT(health_latency, std::chrono::milliseconds(1000));

  const auto learned = learn.get();
  ASSERT_TRUE(learned);
  EXPECT_EQ(learned->status, 200);
  EXPECT_GT(Clock::now() - start, std::chrono::milliseconds(2000));
  EXPECT_LT(before, start + std::chrono::milliseconds(2000));
  slow.stop();
}

TEST_F(Service, HttpRoutes) {
  const int port = service.start("127.0.0.1", 0);
  httplib::Client client("127.0.0.1", port);
  const auto ok = client.Post("/learn", json{{"learning_problem", married_female()}}.dump(), "application/json");
  ASSERT_TRUE(ok);
  EXPECT_EQ(ok->status, 200);
  EXPECT_EQ(json::parse(ok->body)["hypotheses"],
            json::parse(service.handle_learn(json{{"learning_problem", married_female()}}.dump()).body)["hypotheses"]);
  const auto bad = client.Post("/learn", "{", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  const auto missing = client.Get("/nope");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  service.stop();
}

}  // namespace
}  // namespace cel
