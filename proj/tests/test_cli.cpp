#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "seplab/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = seplab::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) {
  const char* dir = std::getenv("SEPLAB_SAMPLES");
  std::filesystem::path base = dir ? dir : "samples";
  return (base / name).string();
}

}  // namespace

TEST(Cli, ClassifyGraphFiles) {
  auto odd = run({"classify", "--graph", sample("odd_cycle.json")});
  ASSERT_EQ(odd.code, 0) << odd.err;
  EXPECT_EQ(odd.json()["parity"], "Odd");
  EXPECT_EQ(run({"classify", "--graph", sample("even_loop.json")}).json()["parity"], "Even");
}

TEST(Cli, ClassifyCountsAsCsv) {
  auto r = run({"--format", "csv", "classify", "--n", "2", "--d", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "n,d,total,even,odd,neither\n2,2,64,21,13,30\n");
}

TEST(Cli, DotOutput) {
  auto r = run({"--format", "dot", "classify", "--graph", sample("odd_cycle.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("digraph G {", 0), 0u);
  EXPECT_NE(r.out.find("1 -> 2 [label=\"1\"]"), std::string::npos);
}

TEST(Cli, VerifyExitCodes) {
  auto ok = run({"verify", "--automaton", sample("counter2.json"), "--n", "2"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.json()["ok"]);
  auto bad = run({"verify", "--automaton", sample("counter2_cap1.json"), "--n", "2"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.json()["reason"], "OddAccepted");
  auto timed = run({"verify", "--counter", "2", "--n", "2", "--time", "5"});
  EXPECT_EQ(timed.code, 1);
  EXPECT_EQ(timed.json()["reason"], "EvenNotAcceptedByT");
}

TEST(Cli, DerivedTimeBound) {
  auto r = run({"verify", "--counter", "2", "--n", "2", "--derive"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["time_bound"], 6);
  EXPECT_EQ(r.json()["within_qn"], true);
}

TEST(Cli, JobsDoNotChangeOutput) {
  auto one = run({"--jobs", "1", "verify", "--counter", "3", "--n", "3", "--derive"});
  auto four = run({"--jobs", "4", "verify", "--counter", "3", "--n", "3", "--derive"});
  EXPECT_EQ(one.code, four.code);
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, SolveArena) {
  auto via = run({"solve", "--arena", sample("arena3.json")});
  auto direct = run({"solve", "--arena", sample("arena3.json"), "--via", "direct"});
  ASSERT_EQ(via.code, 0) << via.err;
  ASSERT_EQ(direct.code, 0) << direct.err;
  EXPECT_EQ(via.json()["winner"], direct.json()["winner"]);
}

TEST(Cli, CoverCertificates) {
  EXPECT_EQ(run({"comm", "check", "--cert", sample("cover_2_2.json")}).code, 0);
  EXPECT_EQ(run({"comm", "check", "--cert", sample("cover_bad.json")}).code, 1);
  auto m = run({"comm", "mincover", "--n", "2", "--k", "2", "--gamma", "1/2"});
  ASSERT_EQ(m.code, 0);
  EXPECT_EQ(m.json()["min_cover"], 2);
  EXPECT_EQ(run({"comm", "A", "--n", "3", "--a", "1", "--t", "0", "--k", "2"}).json()["A"], "2");
}

TEST(Cli, FiCheckPair) {
  EXPECT_EQ(run({"extremal", "fi-check", "--n", "6", "--t", "0", "--family", sample("family_6_2.json"), "--g",
                 sample("family_6_2_g.json")})
                .code,
            0);
  EXPECT_EQ(run({"extremal", "fi-check", "--n", "6", "--t", "0", "--family", sample("family_6_2_g.json"), "--g",
                 sample("family_6_2.json")})
                .code,
            1);
}

TEST(Cli, Params) {
  auto p = run({"params", "--n", "39", "--t", "39"}).json();
  EXPECT_EQ(p["n_prime"], 20);
  EXPECT_EQ(p["k"], 20);
  EXPECT_EQ(p["blocks"], 4);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "classify", "--n", "2", "--d", "2"}).code, 2);
  EXPECT_EQ(run({"classify", "--graph", sample("missing.json")}).code, 2);
  EXPECT_EQ(run({"refute", "--counter", "2", "--threshold", "2", "--n", "2"}).code, 2);
}

TEST(Cli, CapRefusal) {
  auto r = run({"--caps", "nodes=2", "verify", "--counter", "3", "--n", "3"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("refused"), std::string::npos);
  EXPECT_EQ(run({"--caps", "nodes=x", "classify", "--n", "2", "--d", "2"}).code, 2);
}
