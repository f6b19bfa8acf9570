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

#include <random>

#include <midselect/resources.hpp>
#include <midselect/statevector.hpp>
#include <midselect/transpile.hpp>

#include "oracle.hpp"

using namespace midselect;

namespace {

// Compare the transpiled unitary against the oracle on the original circuit's
// wires; extra wires introduced by the lowering must start and end at |0>.
void expect_equivalent(const Circuit& logical, McxStrategy strategy) {
  const Circuit low = transpile(logical, strategy);
  ASSERT_TRUE(is_transpiled(low));
  const MatX want = oracle::unitary(logical);
  const Eigen::Index dim = want.rows();
  const MatX got = oracle::unitary(low, dim).topRows(dim);
  EXPECT_TRUE(equal_up_to_global_phase(got, want, 1e-9))
      << "strategy " << to_string(strategy) << " max diff " << max_abs_diff(got, want);
}

std::vector<bool> random_polarity(int k, std::mt19937_64& rng) {
  std::vector<bool> p;
  for (int i = 0; i < k; ++i) p.push_back(rng() & 1U);
  return p;
}

}  // namespace

class McxLowering : public ::testing::TestWithParam<int> {};

TEST_P(McxLowering, MatchesMatrixForBothStrategies) {
  const int k = GetParam();
  std::mt19937_64 rng(100 + k);
  for (int spare : {0, 1, 2}) {
    const int n = k + 1 + spare;
    if (n > 9) continue;
    std::vector<int> ctrl(k);
    for (int i = 0; i < k; ++i) ctrl[i] = i;
    Circuit c(n);
    c.add(Gate::mcx(ctrl, k, random_polarity(k, rng)));
    expect_equivalent(c, McxStrategy::AncillaFree);
    expect_equivalent(c, McxStrategy::BorrowedAncilla);
  }
}

TEST_P(McxLowering, MultiControlledPhase) {
  const int k = GetParam();
  std::mt19937_64 rng(200 + k);
  std::vector<int> ctrl(k);
  for (int i = 0; i < k; ++i) ctrl[i] = i;
  Circuit c(k + 1);
  c.add(Gate::controlled_phase(ctrl, k, 0.77, random_polarity(k, rng)));
  expect_equivalent(c, McxStrategy::AncillaFree);
  expect_equivalent(c, McxStrategy::BorrowedAncilla);
}

INSTANTIATE_TEST_SUITE_P(Controls, McxLowering, ::testing::Range(1, 7));

TEST(Transpile, TwoQubitPrimitives) {
  for (double th : {0.0, 0.3, -1.2, kPi / 8}) {
    Circuit c(2);
    c.add(Gate::xx_plus_yy(0, 1, th));
    expect_equivalent(c, McxStrategy::AncillaFree);
    Circuit r(2);
    r.add(Gate::xx_plus_yy(1, 0, th));
    expect_equivalent(r, McxStrategy::AncillaFree);
  }
  Circuit s(3);
  s.add(Gate::swap(0, 2));
  s.add(Gate::cnot(2, 1, false));
  expect_equivalent(s, McxStrategy::AncillaFree);
}

TEST(Transpile, RandomCircuits) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5;
    Circuit c(n);
    for (int g = 0; g < 12; ++g) {
      std::vector<int> w(n);
      for (int i = 0; i < n; ++i) w[i] = i;
      std::shuffle(w.begin(), w.end(), rng);
      switch (rng() % 5) {
        case 0: c.add(Gate::u1q(oracle::random_unitary_2(rng), w[0])); break;
        case 1: c.add(Gate::cnot(w[0], w[1], rng() & 1U)); break;
        case 2: c.add(Gate::mcx({w[0], w[1], w[2]}, w[3], random_polarity(3, rng))); break;
        case 3: c.add(Gate::controlled_phase({w[0], w[1]}, w[2], 0.5 + trial, random_polarity(2, rng))); break;
        default: c.add(Gate::xx_plus_yy(w[0], w[1], 0.1 * g)); break;
      }
    }
    expect_equivalent(c, McxStrategy::AncillaFree);
    expect_equivalent(c, McxStrategy::BorrowedAncilla);
  }
}

TEST(Transpile, KeepsNonUnitaryInstructions) {
  Circuit c(2);
  c.add(Gate::cnot(0, 1));
  c.add(PostSelectZero{{1}});
  c.add(Reset{1});
  c.add(MeasureX{0});
  const Circuit t = transpile(c);
  EXPECT_TRUE(is_transpiled(t));
  // MeasureX becomes H then MeasureZ.
  ASSERT_EQ(t.size(), 5u);
  EXPECT_TRUE(std::holds_alternative<PostSelectZero>(t.instructions()[1]));
  EXPECT_TRUE(std::holds_alternative<Reset>(t.instructions()[2]));
  EXPECT_EQ(std::get<Gate>(t.instructions()[3]).kind, GateKind::U1q);
  EXPECT_TRUE(std::holds_alternative<MeasureZ>(t.instructions()[4]));
}

TEST(Transpile, MergesSingleQubitRuns) {
  Circuit c(1);
  c.add(Gate::u1q(mat2::h(), 0));
  c.add(Gate::u1q(mat2::h(), 0));
  EXPECT_EQ(transpile(c).size(), 0u);
  c.add(Gate::u1q(mat2::t(), 0));
  c.add(Gate::u1q(mat2::s(), 0));
  EXPECT_EQ(transpile(c).size(), 1u);
}

TEST(Resources, CountsAndDepth) {
  Circuit c(3);
  c.add(Gate::cnot(0, 1));
  c.add(Gate::u1q(mat2::h(), 2));
  c.add(Gate::cnot(1, 2));
  c.add(PostSelectZero{{2}});
  c.add(Reset{2});
  const auto r = resources(c);
  EXPECT_EQ(r.gates, 3u);
  EXPECT_EQ(r.depth, 4u);
  EXPECT_EQ(r.volume, 12u);
  EXPECT_EQ(r.ancilla, 0u);
  EXPECT_EQ(longest_wire_chain(c), 4u);
}
