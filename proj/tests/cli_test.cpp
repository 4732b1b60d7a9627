#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "csm/cli.hpp"
#include "csm/miner.hpp"

namespace csm {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "csm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("csm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) {
    std::ofstream(dir_ / name) << content;
    return path(name);
  }

  // Small planted pair written through the gen subcommand.
  std::string gen(const std::string& prefix, std::vector<std::string> extra = {},
                  std::vector<std::string> sizes = {"--n", "60", "--core", "5", "--contrast", "6"}) {
    std::vector<std::string> args{"gen", "--seed", "7", "--out", path(prefix)};
    args.insert(args.end(), sizes.begin(), sizes.end());
    args.insert(args.end(), extra.begin(), extra.end());
    Invocation r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return path(prefix);
  }

  fs::path dir_;
};

TEST_F(Cli, VersionAndHelp) {
  Invocation v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(kVersion), std::string::npos);
  Invocation h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("mine"), std::string::npos);
  Invocation none = run({});
  EXPECT_EQ(none.code, kExitInputError);
}

TEST_F(Cli, MineJsonOnPlantedInstance) {
  std::string prefix = gen("p");
  auto truth = nlohmann::json::parse(slurp(prefix + "_truth.json"));
  std::string seed = truth["core"][0];
  Invocation r = run({"mine", "--graph-a", prefix + "_a.tsv", "--graph-b", prefix + "_b.tsv", "--seed", seed, "--radius", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["parameters"]["radius"], 1);
  EXPECT_EQ(j["seeds"], nlohmann::json::array({seed}));

  std::vector<std::string> core = j["core"]["nodes"];
  std::vector<std::string> want_core = truth["core"];
  std::sort(core.begin(), core.end());
  std::sort(want_core.begin(), want_core.end());
  EXPECT_EQ(core, want_core);
  EXPECT_DOUBLE_EQ(j["core"]["coherence"].get<double>(), 2.0 * 10.0 / 5.0);

  ASSERT_EQ(j["contrast_subgraphs"].size(), 1u);
  std::vector<std::string> added = j["contrast_subgraphs"][0]["added"];
  std::vector<std::string> want_added = truth["contrast"];
  std::sort(added.begin(), added.end());
  std::sort(want_added.begin(), want_added.end());
  EXPECT_EQ(added, want_added);
  EXPECT_GT(j["contrast_subgraphs"][0]["contrast"].get<double>(), 0.0);
  EXPECT_FALSE(j["edges"].empty());
}

TEST_F(Cli, MineOtherFormatsAndOutFile) {
  std::string prefix = gen("p");
  auto truth = nlohmann::json::parse(slurp(prefix + "_truth.json"));
  std::string seed = truth["core"][0];
  std::vector<std::string> base{"mine", "--graph-a", prefix + "_a.tsv", "--graph-b", prefix + "_b.tsv",
                                "--seed", seed, "--radius", "1"};

  auto dot_args = base;
  dot_args.insert(dot_args.end(), {"--format", "dot"});
  Invocation dot = run(dot_args);
  ASSERT_EQ(dot.code, 0) << dot.err;
  EXPECT_EQ(dot.out.rfind("graph", 0), 0u);
  EXPECT_NE(dot.out.find("(+)"), std::string::npos);

  auto csv_args = base;
  csv_args.insert(csv_args.end(), {"--format", "csv", "--out", path("m.csv")});
  Invocation csv = run(csv_args);
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_TRUE(csv.out.empty());
  std::string text = slurp(path("m.csv"));
  EXPECT_EQ(text.rfind("graph,node,", 0), 0u);
  // header + 11 rows per graph
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 2 * 11);

  auto bad = base;
  bad.insert(bad.end(), {"--format", "png"});
  EXPECT_EQ(run(bad).code, kExitInputError);
}

TEST_F(Cli, MineAblationFlagsAreRecorded) {
  std::string prefix = gen("p");
  auto truth = nlohmann::json::parse(slurp(prefix + "_truth.json"));
  Invocation r = run({"mine", "--graph-a", prefix + "_a.tsv", "--graph-b", prefix + "_b.tsv", "--seed",
               truth["core"][0], "--radius", "1", "--no-core", "--no-neighbor"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["parameters"]["no_core"], true);
  EXPECT_EQ(j["parameters"]["no_neighbor"], true);
  EXPECT_EQ(j["core"]["nodes"], nlohmann::json::array({truth["core"][0]}));
}

TEST_F(Cli, MineInputErrors) {
  std::string prefix = gen("p");
  EXPECT_EQ(run({"mine", "--graph-a", prefix + "_a.tsv", "--graph-b", prefix + "_b.tsv", "--seed", "v0"}).code,
            kExitInputError);  // --radius is required
  Invocation unknown = run({"mine", "--graph-a", prefix + "_a.tsv", "--graph-b", prefix + "_b.tsv", "--seed",
                     "nobody", "--radius", "1"});
  EXPECT_EQ(unknown.code, kExitInputError);
  EXPECT_NE(unknown.err.find("nobody"), std::string::npos);
  EXPECT_EQ(run({"mine", "--graph-a", path("missing.tsv"), "--graph-b", prefix + "_b.tsv", "--seed", "v0",
                 "--radius", "1"})
                .code,
            kExitInputError);
  EXPECT_EQ(run({"mine", "--graph-a", prefix + "_a.tsv", "--graph-b", prefix + "_b.tsv", "--seed", "v0",
                 "--radius", "1", "--k", "0"})
                .code,
            kExitInputError);
}

TEST_F(Cli, MineIsByteIdenticalAcrossRuns) {
  std::string prefix = gen("p", {"--p-bg", "0.05"});
  std::vector<std::string> args{"mine", "--graph-a", prefix + "_a.tsv", "--graph-b", prefix + "_b.tsv",
                                "--seed", "v3", "--radius", "2", "--k", "3"};
  Invocation first = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  for (int i = 0; i < 3; ++i) EXPECT_EQ(run(args).out, first.out);
}

TEST_F(Cli, GenIsDeterministicAndValidates) {
  std::string x = gen("x");
  std::string y = gen("y");
  for (const char* suffix : {"_a.tsv", "_b.tsv", "_truth.json"}) {
    EXPECT_EQ(slurp(x + suffix), slurp(y + suffix)) << suffix;
  }
  Invocation bad = run({"gen", "--core", "0", "--contrast", "5", "--out", path("z")});
  EXPECT_EQ(bad.code, kExitInputError);
  EXPECT_FALSE(bad.err.empty());
  EXPECT_FALSE(fs::exists(path("z_a.tsv")));
}

TEST_F(Cli, SplitTransforms) {
  std::string events = write("ev.txt",
                             "# u v t\n"
                             "a b 2005\n"
                             "a b 2006\n"
                             "a b 2007\n"
                             "b c 2010\n");
  Invocation log1 = run({"split", "--events", events, "--split-at", "2009", "--transform", "log1", "--out-a",
                  path("a.tsv"), "--out-b", path("b.tsv")});
  ASSERT_EQ(log1.code, 0) << log1.err;
  auto pair = load_pair(path("a.tsv"), path("b.tsv"));
  NodeIndex a = pair.labels().at("a");
  NodeIndex b = pair.labels().at("b");
  NodeIndex c = pair.labels().at("c");
  EXPECT_DOUBLE_EQ(pair.weight(Side::A, a, b), std::log(3.0) + 1.0);
  EXPECT_DOUBLE_EQ(pair.weight(Side::B, b, c), 1.0);

  Invocation identity = run({"split", "--events", events, "--split-at", "2009", "--transform", "identity", "--out-a",
                      path("a.tsv"), "--out-b", path("b.tsv")});
  ASSERT_EQ(identity.code, 0) << identity.err;
  auto raw = load_pair(path("a.tsv"), path("b.tsv"));
  EXPECT_EQ(raw.weight(Side::A, raw.labels().at("a"), raw.labels().at("b")), 3.0);

  Invocation late = run({"split", "--events", events, "--split-at", "3000", "--out-a", path("a.tsv"), "--out-b",
                  path("b.tsv")});
  ASSERT_EQ(late.code, 0) << late.err;
  std::string b_text = slurp(path("b.tsv"));
  std::istringstream lines(b_text);
  std::string line;
  std::size_t edge_lines = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#') ++edge_lines;
  }
  EXPECT_EQ(edge_lines, 0u);

  EXPECT_EQ(run({"split", "--events", events, "--split-at", "2009", "--transform", "sqrt", "--out-a",
                 path("a.tsv"), "--out-b", path("b.tsv")})
                .code,
            kExitInputError);
}

TEST_F(Cli, CheckRandomTrialsPass) {
  Invocation r = run({"check", "--trials", "100", "--rng-seed", "5"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n') > 200, true);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST_F(Cli, CheckOnPlantedFiles) {
  std::string prefix = gen("p", {}, {"--n", "18", "--core", "4", "--contrast", "4"});
  auto truth = nlohmann::json::parse(slurp(prefix + "_truth.json"));
  Invocation r = run({"check", "--graph-a", prefix + "_a.tsv", "--graph-b", prefix + "_b.tsv", "--seed",
               truth["core"][0], "--radius", "1"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST_F(Cli, CheckCatchesCorruptedSolver) {
  SolverFn corrupted = [](const DensityInstance& instance) {
    ScoredSet s = brute_force(instance);
    s.score *= 0.9;
    return s;
  };
  const char* argv[] = {"csm", "check", "--trials", "10"};
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_NE(run_cli(4, argv, out, err, corrupted), 0);
  EXPECT_NE(out.str().find("FAIL"), std::string::npos);

  SolverFn suboptimal = [](const DensityInstance& instance) { return greedy_peel(instance); };
  bool any_failed = false;
  for (const char* seed : {"1", "2", "3", "4", "5"}) {
    const char* args[] = {"csm", "check", "--trials", "40", "--rng-seed", seed};
    std::ostringstream o;
    std::ostringstream e;
    any_failed = any_failed || run_cli(6, args, o, e, suboptimal) != 0;
  }
  EXPECT_TRUE(any_failed);
}

}  // namespace
}  // namespace csm
