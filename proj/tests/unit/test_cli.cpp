// Copyright 2026 The midselect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <midselect_cli/cli.hpp>

namespace fs = std::filesystem;
using midselect::cli::run_cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("midselect_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "tsp.json") << R"({"N": 3, "W": [[0, 2, 3], [4, 0, 5], [6, 7, 0]]})";
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

}  // namespace

TEST_F(Cli, VerifyOneHotEight) {
  const auto r = cli({"verify-encoding", "--encoding", "onehot", "--n", "8"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("8/8 basis checks passed"), std::string::npos) << r.out;
}

TEST_F(Cli, BuildThenVerify) {
  const auto c = (dir / "c.json").string();
  auto r = cli({"build", "--encoding", "mixed", "--l", "2", "--m", "3", "--variant", "store", "--out", c});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(c + ".manifest.json"));
  r = cli({"verify-encoding", "--encoding", "mixed", "--l", "2", "--m", "3", "--circuit", c});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("64/64"), std::string::npos);
  // Same circuit against the wrong oracle fails with counterexamples.
  r = cli({"verify-encoding", "--encoding", "khot", "--n", "6", "--k", "1", "--circuit", c});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("counterexample"), std::string::npos);
}

TEST_F(Cli, MissingInstanceIsUsageError) {
  const auto r = cli({"spectrum"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("--instance"), std::string::npos);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST_F(Cli, UnknownFlagAndBadValues) {
  EXPECT_EQ(cli({"build", "--encoding", "onehot", "--n", "4", "--bogus", "--out", "x"}).code, 1);
  EXPECT_EQ(cli({"build", "--encoding", "octal", "--n", "4", "--out", "x"}).code, 1);
  EXPECT_EQ(cli({"verify-encoding", "--encoding", "khot", "--n", "4", "--k", "9"}).code, 1);
  EXPECT_EQ(cli({}).code, 1);
}

TEST_F(Cli, MalformedInstance) {
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_EQ(cli({"spectrum", "--instance", (dir / "bad.json").string()}).code, 1);
}

TEST_F(Cli, Spectrum) {
  const auto r = cli({"spectrum", "--instance", (dir / "tsp.json").string(), "--reduced"});
  ASSERT_EQ(r.code, 0) << r.err;
  // tours from city 0: 0-1-2-0 costs 2+5+6 = 13, 0-2-1-0 costs 3+7+4 = 14
  EXPECT_NE(r.out.find("E_min 13"), std::string::npos) << r.out;
}

TEST_F(Cli, SimulateWritesResult) {
  const auto out = (dir / "r.json").string();
  std::ofstream(dir / "angles.json") << "[0.1, 0.2, 0.3, 0.4]";
  const auto r = cli({"simulate", "--instance", (dir / "tsp.json").string(), "--layers", "2", "--gamma", "0.01",
                      "--noise", "depol", "--postselect-every", "1", "--angles", (dir / "angles.json").string(),
                      "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(out));
  for (const char* key : {"energy", "raw_energy", "acc_mid", "acc_final"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_LT(j["acc_mid"].get<double>(), 1.0);
  EXPECT_TRUE(fs::exists(out + ".manifest.json"));
}

TEST_F(Cli, SizeGuard) {
  const auto r = cli({"delta-e", "--cities", "5", "--out", (dir / "d").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("max-qubits"), std::string::npos);
}

TEST_F(Cli, DeltaENoiselessRowsAreZero) {
  const auto d = dir / "d";
  const auto r = cli({"delta-e", "--cities", "3", "--instances", "3", "--gamma", "0", "--noise", "randx",
                      "--stride", "4", "--layers", "4..5", "--seed", "2", "--out", d.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::stringstream csv(slurp(d / "delta_e.csv"));
  std::string line;
  std::getline(csv, line);
  int rows = 0;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    ASSERT_EQ(cells.size(), 9u);
    EXPECT_NEAR(std::stod(cells[6]), 0.0, 1e-9) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 6);
  EXPECT_TRUE(fs::exists(d / "summary.json"));
  EXPECT_TRUE(fs::exists(d / "manifest.json"));
}

TEST_F(Cli, ReplayReproducesOutputs) {
  const auto a = dir / "a";
  ASSERT_EQ(cli({"delta-e", "--instances", "2", "--layers", "4", "--seed", "5", "--out", a.string()}).code, 0);
  const auto b = dir / "b";
  const auto r = cli({"replay", "--manifest", (a / "manifest.json").string(), "--out", b.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(a / "delta_e.csv"), slurp(b / "delta_e.csv"));
  EXPECT_EQ(slurp(a / "summary.json"), slurp(b / "summary.json"));
}

TEST_F(Cli, OptimizeExp) {
  const auto d = dir / "o";
  const auto r = cli({"optimize-exp", "--scenario", "inject", "--instances", "1", "--layers", "2", "--max-iter",
                      "3", "--out", d.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = slurp(d / "optimization.csv");
  EXPECT_EQ(csv.rfind("instance,seed,scenario,E_plain,E_with,rel_improvement,iters_plain,iters_with", 0), 0u);
}

TEST(CliParse, IntLists) {
  using midselect::cli::parse_int_list;
  EXPECT_EQ(parse_int_list("1..4"), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(parse_int_list("4,8,12"), (std::vector<int>{4, 8, 12}));
  EXPECT_EQ(parse_int_list("8"), (std::vector<int>{8}));
  EXPECT_THROW(parse_int_list("4..1"), std::invalid_argument);
  EXPECT_THROW(parse_int_list("a,b"), std::invalid_argument);
}
