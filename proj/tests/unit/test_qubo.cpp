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

#include <algorithm>
#include <numeric>
#include <random>

#include <midselect/qubo.hpp>

#include "oracle.hpp"

using namespace midselect;

namespace {

QuboModel random_integer_qubo(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  QuboModel q(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (rng() % 3) q.add(i, j, d(rng));
    }
  }
  q.add_offset(d(rng));
  return q;
}

double naive_qubo(const QuboModel& q, std::uint64_t x) {
  double e = q.offset();
  for (int i = 0; i < q.n(); ++i) {
    for (int j = i; j < q.n(); ++j) e += q.coeff(i, j) * oracle::bit(x, i) * oracle::bit(x, j);
  }
  return e;
}

double naive_ising(const IsingModel& m, std::uint64_t x) {
  double e = m.offset();
  auto s = [&](int i) { return 1.0 - 2.0 * oracle::bit(x, i); };
  for (int i = 0; i < m.n(); ++i) {
    e -= m.h(i) * s(i);
    for (int k = i + 1; k < m.n(); ++k) e -= m.j(i, k) * s(i) * s(k);
  }
  return e;
}

TspInstance random_tsp(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(1, 9);
  std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) w[i][j] = d(rng);
    }
  }
  return TspInstance::with_default_penalty(w);
}

// Bit t*n+i set iff city i at time t; nullopt unless the assignment is a permutation matrix.
std::optional<std::vector<int>> decode_tour(int n, std::uint64_t x) {
  std::vector<int> tour(n, -1);
  std::vector<int> seen(n, 0);
  for (int t = 0; t < n; ++t) {
    for (int i = 0; i < n; ++i) {
      if (!oracle::bit(x, t * n + i)) continue;
      if (tour[t] != -1) return std::nullopt;
      tour[t] = i;
      ++seen[i];
    }
    if (tour[t] == -1) return std::nullopt;
  }
  for (int c : seen) {
    if (c != 1) return std::nullopt;
  }
  return tour;
}

long long naive_cost(const TspInstance& inst, const std::vector<int>& tour) {
  long long c = 0;
  for (std::size_t t = 0; t < tour.size(); ++t) c += inst.w[tour[t]][tour[(t + 1) % tour.size()]];
  return c;
}

}  // namespace

TEST(Qubo, EnergyMatchesNaiveSum) {
  std::mt19937_64 rng(31);
  const QuboModel q = random_integer_qubo(7, rng);
  const auto diag = q.diagonal();
  for (std::uint64_t x = 0; x < 128; ++x) {
    EXPECT_EQ(q.energy(x), naive_qubo(q, x));
    EXPECT_EQ(diag[x], q.energy(x));
  }
}

TEST(Qubo, IsingSpectrumEqualityExhaustive) {
  std::mt19937_64 rng(32);
  for (int n = 1; n <= 12; ++n) {
    const QuboModel q = random_integer_qubo(n, rng);
    const IsingModel m = qubo_to_ising(q);
    const QuboModel back = ising_to_qubo(m);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      ASSERT_EQ(naive_ising(m, x), naive_qubo(q, x)) << n << " " << x;
      ASSERT_EQ(m.energy(x), q.energy(x));
      ASSERT_EQ(back.energy(x), q.energy(x));
    }
  }
}

TEST(Qubo, SingleTermIsingForm) {
  // x_0 = (1 - s_0)/2, so 4 x_0 = 2 - 2 s_0: h = +2 under H = -h Z.
  QuboModel q(1);
  q.add(0, 0, 4);
  const IsingModel m = qubo_to_ising(q);
  EXPECT_DOUBLE_EQ(m.h(0), 2.0);
  EXPECT_DOUBLE_EQ(m.offset(), 2.0);
  QuboModel p(2);
  p.add(0, 1, 4);
  const IsingModel mp = qubo_to_ising(p);
  EXPECT_DOUBLE_EQ(mp.j(0, 1), -1.0);
  EXPECT_DOUBLE_EQ(mp.h(0), 1.0);
  EXPECT_DOUBLE_EQ(mp.h(1), 1.0);
  EXPECT_DOUBLE_EQ(mp.offset(), 1.0);
}

TEST(Qubo, FixReindexes) {
  std::mt19937_64 rng(33);
  const QuboModel q = random_integer_qubo(5, rng);
  const QuboModel f = q.fix({{1, 1}, {3, 0}});
  ASSERT_EQ(f.n(), 3);
  for (std::uint64_t y = 0; y < 8; ++y) {
    const std::uint64_t x = (y & 1U) | (1U << 1) | (((y >> 1) & 1U) << 2) | (((y >> 2) & 1U) << 4);
    EXPECT_EQ(f.energy(y), q.energy(x));
  }
}

TEST(Qubo, SpectrumAndNormalization) {
  QuboModel q(2);
  q.add(0, 0, -1);
  q.add(1, 1, 2);
  q.add(0, 1, 3);
  const Spectrum s = brute_spectrum(q);
  EXPECT_EQ(s.e_min, -1);
  EXPECT_EQ(s.e_max, 4);
  EXPECT_EQ(s.argmin, (std::vector<std::uint64_t>{1}));
  EXPECT_DOUBLE_EQ(normalize_energy(-1, s.e_min, s.e_max), 0.0);
  EXPECT_DOUBLE_EQ(normalize_energy(4, s.e_min, s.e_max), 1.0);
  EXPECT_THROW(normalize_energy(1, 2, 2), std::domain_error);
  EXPECT_THROW(brute_spectrum(QuboModel(25)), std::invalid_argument);
}

TEST(Tsp, PenaltyRule) {
  std::vector<std::vector<int>> w = {{0, 9, 1}, {2, 0, 3}, {4, 5, 0}};
  EXPECT_EQ(TspInstance::with_default_penalty(w).penalty, 18);
  const auto parsed = parse_tsp_instance(R"({"N": 3, "W": [[0,9,1],[2,0,3],[4,5,0]]})");
  EXPECT_EQ(parsed.penalty, 18);
  const auto explicit_a = parse_tsp_instance(R"({"N": 3, "W": [[0,9,1],[2,0,3],[4,5,0]], "A": 7})");
  EXPECT_EQ(explicit_a.penalty, 7);
  EXPECT_EQ(parse_tsp_instance(tsp_instance_to_json(explicit_a)).w, explicit_a.w);
  EXPECT_THROW(parse_tsp_instance(R"({"N": 3, "W": [[0,1],[1,0]]})"), std::invalid_argument);
  EXPECT_THROW(parse_tsp_instance("{"), std::invalid_argument);
}

TEST(Tsp, OnlyValidToursHaveZeroPenalty) {
  std::mt19937_64 rng(34);
  for (int n : {2, 3, 4}) {
    const TspInstance inst = random_tsp(n, rng);
    const auto parts = tsp_qubo_parts(inst);
    QuboModel pen = parts.time_penalty;
    pen += parts.city_penalty;
    const int vars = n * n;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << vars); ++x) {
      const auto tour = decode_tour(n, x);
      const double p = pen.energy(x);
      if (tour) {
        ASSERT_EQ(p, 0.0);
        ASSERT_EQ(parts.route.energy(x), static_cast<double>(naive_cost(inst, *tour)));
        ASSERT_EQ(tsp_qubo(inst).energy(x), static_cast<double>(naive_cost(inst, *tour)));
      } else {
        ASSERT_GE(p, inst.penalty);
      }
    }
  }
}

TEST(Tsp, ReducedModelMinimumIsBestTour) {
  std::mt19937_64 rng(35);
  for (int n : {3, 4}) {
    const TspInstance inst = random_tsp(n, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long long best = LLONG_MAX;
    const QuboModel red = reduced_tsp_qubo(inst);
    ASSERT_EQ(red.n(), (n - 1) * (n - 1));
    do {
      const long long c = naive_cost(inst, perm);
      best = std::min(best, c);
      EXPECT_EQ(tour_cost(inst, perm), c);
      EXPECT_EQ(tsp_qubo(inst).energy(tour_assignment(n, perm)), static_cast<double>(c));
      EXPECT_EQ(red.energy(reduced_tour_assignment(n, perm)), static_cast<double>(c));
    } while (std::next_permutation(perm.begin() + 1, perm.end()));
    EXPECT_EQ(brute_spectrum(red).e_min, static_cast<double>(best));
  }
}

TEST(Tsp, ReducedLayoutIsRegisterMajor) {
  // Tour 0 -> 2 -> 1 on N = 3: time 1 holds city 2, time 2 holds city 1.
  // Register t-1 = time t, bit i-1 = city i.
  EXPECT_EQ(reduced_tour_assignment(3, {0, 2, 1}), (1u << 1) | (1u << 2));
}
