#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "mock_endpoint.hpp"
#include "test_support.hpp"

namespace {

using nlohmann::json;

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun cli(const std::string& args, const std::string& env = "") {
  const std::string command = env + (env.empty() ? "" : " ") + "\"" + CEL_CLI_PATH + "\" " + args + " 2>/dev/null";
  CliRun run;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return run;
  std::array<char, 4096> buffer{};
  std::size_t n;
  while ((n = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) run.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

std::string kb() { return "--kb " + cel::testing::data_path("family.nt"); }
std::string lp() { return "--lp " + cel::testing::data_path("married_female.json"); }

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("cel_cli_" + std::to_string(getpid()) + "_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

TEST(Cli, JsonOutputSolvesMarriedFemale) {
  const CliRun r = cli("learn " + kb() + " " + lp() + " --learner celoe --output json");
  ASSERT_EQ(r.exit_code, 0);
  const json body = json::parse(r.out);
  EXPECT_EQ(body["hypotheses"][0]["f1"], 1.0);
  EXPECT_EQ(body["hypotheses"][0]["accuracy"], 1.0);
  EXPECT_FALSE(body["hypotheses"][0].contains("sparql"));
  EXPECT_TRUE(body["stats"].contains("wall_ms"));
}

TEST(Cli, EmitSparqlAndVerbalize) {
  const CliRun r = cli("learn " + kb() + " " + lp() + " --output json --emit-sparql --verbalize --top-k 3");
  ASSERT_EQ(r.exit_code, 0);
  const json body = json::parse(r.out);
  ASSERT_EQ(body["hypotheses"].size(), 3U);
  for (const auto& h : body["hypotheses"]) {
    EXPECT_NE(h["sparql"].get<std::string>().find("SELECT DISTINCT ?x"), std::string::npos);
    EXPECT_FALSE(h["verbalization"].get<std::string>().empty());
  }
}

TEST(Cli, TextOutput) {
  const CliRun r = cli("learn " + kb() + " " + lp());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("F1"), std::string::npos);
  EXPECT_NE(r.out.find("married"), std::string::npos);
}

TEST(Cli, InlineProblemAndEvoSeed) {
  const std::string inline_lp =
      "--lp '{\"positive_examples\":[\"http://www.benchmark.org/family#F10F172\","
      "\"http://www.benchmark.org/family#F10F179\",\"http://www.benchmark.org/family#F10F174\"],"
      "\"negative_examples\":[\"http://www.benchmark.org/family#F10F177\","
      "\"http://www.benchmark.org/family#F10F175\"]}'";
  const CliRun a = cli("learn " + kb() + " " + inline_lp + " --learner evo --seed 5 --output json");
  const CliRun b = cli("learn " + kb() + " " + lp() + " --learner evo --seed 5 --output json");
  ASSERT_EQ(a.exit_code, 0);
  ASSERT_EQ(b.exit_code, 0);
  EXPECT_EQ(json::parse(a.out)["hypotheses"], json::parse(b.out)["hypotheses"]);
  EXPECT_EQ(json::parse(a.out)["hypotheses"][0]["f1"], 1.0);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(cli("learn " + lp()).exit_code, 2);
  EXPECT_EQ(cli("learn " + kb() + " --endpoint http://127.0.0.1:1/sparql " + lp()).exit_code, 2);
  EXPECT_EQ(cli("learn " + kb()).exit_code, 2);
  EXPECT_EQ(cli("learn " + kb() + " " + lp() + " --learner drill").exit_code, 2);
  EXPECT_EQ(cli("learn " + kb() + " " + lp() + " --top-k 0").exit_code, 2);
  EXPECT_EQ(cli("learn " + kb() + " " + lp() + " --set nonsense=1").exit_code, 2);
  EXPECT_EQ(cli("learn " + kb() + " --lp " + temp_file("overlap.json",
                                                       R"({"positive_examples":["http://x.org/a"],)"
                                                       R"("negative_examples":["http://x.org/a"]})"))
                .exit_code,
            2);
  EXPECT_EQ(cli("learn " + kb() + " --lp " + temp_file("unknown.json", R"({"positive_examples":["http://x.org/a"]})"))
                .exit_code,
            2);
  EXPECT_EQ(cli("frobnicate").exit_code, 2);
}

TEST(Cli, KnowledgeBaseErrorsExitThree) {
  EXPECT_EQ(cli("learn --kb /nonexistent/family.nt " + lp()).exit_code, 3);
  EXPECT_EQ(cli("learn --kb " + temp_file("broken.nt", "<http://x.org/a> <http://x.org/p> .\n") + " " + lp()).exit_code,
            3);
}

TEST(Cli, EndpointErrorsExitFour) {
  EXPECT_EQ(cli("learn --endpoint http://127.0.0.1:1/sparql --timeout-ms 1000 " + lp()).exit_code, 4);
  EXPECT_EQ(cli("learn " + lp(), "CEL_SPARQL_ENDPOINT=http://127.0.0.1:1/sparql").exit_code, 4);
}

TEST(Cli, EndpointModeMatchesFileMode) {
  const auto family = cel::testing::load_family();
  cel::testing::MockEndpoint endpoint(family.triples);
  const CliRun remote = cli("learn --endpoint " + endpoint.url() + " " + lp() + " --output json --top-k 3");
  const CliRun local = cli("learn " + kb() + " " + lp() + " --output json --top-k 3");
  ASSERT_EQ(remote.exit_code, 0);
  ASSERT_EQ(local.exit_code, 0);
  EXPECT_EQ(json::parse(remote.out)["hypotheses"], json::parse(local.out)["hypotheses"]);

  const CliRun via_env = cli("learn " + lp() + " --output json --top-k 3", "CEL_SPARQL_ENDPOINT=" + endpoint.url());
  ASSERT_EQ(via_env.exit_code, 0);
  EXPECT_EQ(json::parse(via_env.out)["hypotheses"], json::parse(local.out)["hypotheses"]);
}

TEST(Cli, RenderAndInstances) {
  const CliRun english = cli("render " + kb() + " 'Female and married some Thing' --as english");
  ASSERT_EQ(english.exit_code, 0);
  EXPECT_EQ(english.out, "a female that is married to something\n");
  const CliRun dl = cli("render " + kb() + " 'not Male' --as dl");
  ASSERT_EQ(dl.exit_code, 0);
  EXPECT_EQ(dl.out, "¬Male\n");
  const CliRun instances = cli("instances " + kb() + " 'married some Male'");
  ASSERT_EQ(instances.exit_code, 0);
  EXPECT_EQ(instances.out,
            "http://www.benchmark.org/family#F10F172\nhttp://www.benchmark.org/family#F10F174\n"
            "http://www.benchmark.org/family#F10F179\n");
  EXPECT_EQ(cli("render " + kb() + " 'Female and' --as dl").exit_code, 2);
}

}  // namespace
