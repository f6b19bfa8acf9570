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

#include <cmath>
#include <set>
#include <sstream>

#include <midselect/experiments.hpp>

using namespace midselect;

namespace {

// P(X >= k), X ~ Bin(n, 1/2), by Pascal's triangle.
double binomial_tail(int k, int n) {
  std::vector<long double> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<long double> next(row.size() + 1, 0);
    for (std::size_t j = 0; j < row.size(); ++j) {
      next[j] += row[j] / 2;
      next[j + 1] += row[j] / 2;
    }
    row = std::move(next);
  }
  long double p = 0;
  for (int j = k; j <= n; ++j) p += row[j];
  return static_cast<double>(p);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

ExperimentPlan small_plan() {
  ExperimentPlan p;
  p.instances = 4;
  p.layers = {4, 2};
  p.seed = 7;
  return p;
}

}  // namespace

TEST(SplitMix64, ReferenceSequence) {
  SplitMix64 r(0);
  EXPECT_EQ(r.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(r.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(r.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64, UniformRanges) {
  SplitMix64 r(5);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = r.uniform_int(1, 9);
    ASSERT_GE(v, 1);
    ASSERT_LE(v, 9);
    seen.insert(v);
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  EXPECT_EQ(seen.size(), 9u);
  EXPECT_THROW(r.uniform_int(3, 2), std::invalid_argument);
}

TEST(Sampling, InstancesAreDeterministicAndInRange) {
  const auto a = sample_instance(11, 3, 4);
  const auto b = sample_instance(11, 3, 4);
  EXPECT_EQ(a.w, b.w);
  EXPECT_NE(a.w, sample_instance(11, 4, 4).w);
  EXPECT_NE(a.w, sample_instance(12, 3, 4).w);
  int mx = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      EXPECT_GE(a.w[i][j], 1);
      EXPECT_LE(a.w[i][j], 9);
      mx = std::max(mx, a.w[i][j]);
    }
  }
  EXPECT_EQ(a.penalty, 2 * mx);
  const auto c = sample_instance(1, 0, 3, {1, 10});
  for (const auto& row : c.w) {
    for (int v : row) EXPECT_LE(v, 10);
  }
  EXPECT_EQ(sample_angles(3, 1, 5), sample_angles(3, 1, 5));
  EXPECT_EQ(sample_angles(3, 1, 5).size(), 10u);
}

TEST(Stats, SignTestMatchesBinomialTail) {
  for (int n : {1, 5, 20, 60}) {
    for (int k = 0; k <= n; ++k) EXPECT_NEAR(sign_test_p(k, n), binomial_tail(k, n), 1e-12) << n << " " << k;
  }
  EXPECT_THROW(sign_test_p(3, 2), std::invalid_argument);
}

TEST(Stats, SummaryExcludesNan) {
  const auto s = summarize({1.0, 2.0, std::nan(""), 4.0});
  EXPECT_EQ(s.n, 3);
  EXPECT_EQ(s.excluded, 1);
  EXPECT_NEAR(s.mean, 7.0 / 3, 1e-15);
  EXPECT_NEAR(s.std, std::sqrt(((1 - 7.0 / 3) * (1 - 7.0 / 3) + (2 - 7.0 / 3) * (2 - 7.0 / 3) +
                                (4 - 7.0 / 3) * (4 - 7.0 / 3)) / 2),
              1e-15);
}

TEST(DeltaE, NoiselessIsZero) {
  auto p = small_plan();
  p.noise = NoiseModel::none();
  for (const auto& r : run_delta_e(p)) {
    EXPECT_NEAR(r.delta_e, 0.0, 1e-9);
    EXPECT_NEAR(r.acc_mid, 1.0, 1e-9);
  }
}

TEST(DeltaE, RecordsAreConsistentAndSorted) {
  const auto recs = run_delta_e(small_plan());
  ASSERT_EQ(recs.size(), 8u);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    EXPECT_EQ(r.instance, static_cast<int>(i / 2));
    EXPECT_EQ(r.layers, i % 2 == 0 ? 2 : 4);
    EXPECT_DOUBLE_EQ(r.delta_e, std::abs(r.e - r.e_no_mid) - std::abs(r.e - r.e_mid));
    EXPECT_GE(r.acc_mid, 0.0);
    EXPECT_LE(r.acc_mid, 1.0);
    EXPECT_GE(r.acc_final, 0.0);
    EXPECT_LE(r.acc_final, 1.0);
  }
  // The ΔE column of the CSV is recomputable from its energy columns.
  const auto rows = parse_csv(delta_e_csv(recs));
  ASSERT_EQ(rows.front(), (std::vector<std::string>{"instance", "seed", "layers", "E", "E_no_mid", "E_mid",
                                                     "delta_E", "acc_mid", "acc_final"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double e = std::stod(rows[i][3]), a = std::stod(rows[i][4]), b = std::stod(rows[i][5]);
    EXPECT_DOUBLE_EQ(std::stod(rows[i][6]), std::abs(e - a) - std::abs(e - b));
  }
}

TEST(DeltaE, ByteIdenticalAcrossRunsAndWorkers) {
  auto p = small_plan();
  const std::string a = delta_e_csv(run_delta_e(p));
  const std::string b = delta_e_csv(run_delta_e(p));
  p.workers = 3;
  const std::string c = delta_e_csv(run_delta_e(p));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  p.seed = 8;
  EXPECT_NE(a, delta_e_csv(run_delta_e(p)));
}

TEST(DeltaE, SummaryJsonHasBuckets) {
  const auto json = delta_e_summary_json(run_delta_e(small_plan()));
  EXPECT_NE(json.find("\"2\""), std::string::npos);
  EXPECT_NE(json.find("\"mean\""), std::string::npos);
  EXPECT_NE(json.find("\"p_value\""), std::string::npos);
}

TEST(Optimization, NoiselessInjectionChangesNothing) {
  ExperimentPlan p;
  p.scenario = Scenario::InjectAfter;
  p.instances = 2;
  p.layers = {2};
  p.stride = 2;
  p.noise = NoiseModel::none();
  p.optimizer.max_iterations = 15;
  for (const auto& r : run_optimization(p)) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_NEAR(r.rel_improvement, 0.0, 1e-9);
    EXPECT_NEAR(r.e_with, r.e_plain, 1e-9);
  }
}

TEST(Optimization, DescendsFromRandomStart) {
  ExperimentPlan p;
  p.scenario = Scenario::CoOptimize;
  p.instances = 1;
  p.layers = {8};
  p.noise = NoiseModel::none();
  p.optimizer.max_iterations = 20;
  const auto r = run_optimization(p).front();
  const auto prob = make_problem(sample_instance(p.seed, 0, p.cities));
  AnsatzConfig cfg;
  cfg.registers = cfg.width = prob.width;
  cfg.layers = 8;
  cfg.angles = sample_angles(p.seed, 0, 8);
  const double start = evaluate(cfg, prob, NoiseModel::none()).energy;
  EXPECT_LT(r.e_plain, start);
  EXPECT_GT(r.iters_plain, 0);
}

TEST(Optimization, ReoptimizingNeverLosesToInjection) {
  ExperimentPlan p;
  p.instances = 2;
  p.layers = {4};
  p.stride = 2;
  p.noise = NoiseModel(NoiseFamily::RandomX, 0.01);
  p.optimizer.max_iterations = 10;
  p.scenario = Scenario::InjectAfter;
  const auto inject = run_optimization(p);
  p.scenario = Scenario::ReOptimize;
  const auto re = run_optimization(p);
  for (std::size_t i = 0; i < re.size(); ++i) {
    EXPECT_DOUBLE_EQ(re[i].e_plain, inject[i].e_plain);
    EXPECT_LE(re[i].e_with, inject[i].e_with + 1e-12);
  }
  const auto rows = parse_csv(optimization_csv(re));
  ASSERT_GE(rows.front().size(), 8u);
  EXPECT_EQ(std::vector<std::string>(rows.front().begin(), rows.front().begin() + 8),
            (std::vector<std::string>{"instance", "seed", "scenario", "E_plain", "E_with", "rel_improvement",
                                      "iters_plain", "iters_with"}));
}

TEST(Plan, Validation) {
  ExperimentPlan p;
  p.cities = 2;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = ExperimentPlan{};
  p.layers.clear();
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = ExperimentPlan{};
  p.scenario = Scenario::DeltaE;
  EXPECT_THROW(run_optimization(p), std::invalid_argument);
  EXPECT_EQ(parse_scenario("co"), Scenario::CoOptimize);
  EXPECT_THROW(parse_scenario("xx"), std::invalid_argument);
}
