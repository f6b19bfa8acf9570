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

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "midselect/density.hpp"
#include "midselect/optimizer.hpp"
#include "midselect/qaoa.hpp"
#include "midselect/qubo.hpp"

namespace midselect {

/// SplitMix64. Portable and fully specified, so streams reproduce across platforms.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform integer in [lo, hi] by rejection sampling.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

 private:
  std::uint64_t state_;
};

/// Independent stream for (seed, instance, purpose).
SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t instance, std::uint64_t purpose);

struct CostRange {
  int lo = 1;
  int hi = 9;
};

TspInstance sample_instance(std::uint64_t seed, int instance, int cities, CostRange range = {});
/// 2*layers angles uniform over [0, 2π).
std::vector<double> sample_angles(std::uint64_t seed, int instance, int layers);

enum class Scenario { DeltaE, InjectAfter, CoOptimize, ReOptimize };
std::string_view to_string(Scenario s);
/// delta_e | inject | co | re (and the long spellings).
Scenario parse_scenario(std::string_view s);

struct ExperimentPlan {
  Scenario scenario = Scenario::DeltaE;
  int cities = 3;
  int instances = 20;
  std::vector<int> layers = {4, 8, 12};
  NoiseModel noise{NoiseFamily::RandomX, 0.01};
  int stride = 4;
  std::uint64_t seed = 0;
  CostRange costs;
  int workers = 1;
  bool bound_check = false;
  OptimizeOptions optimizer;

  void validate() const;
};

struct DeltaERecord {
  int instance = 0;
  std::uint64_t seed = 0;
  int layers = 0;
  double e = 0;
  double e_no_mid = 0;
  double e_mid = 0;
  double delta_e = 0;
  double acc_mid = 0;    // mid-circuit acceptance in the run with mid post-selection
  double acc_final = 0;  // final classical acceptance in that run
  bool rejected = false;
};

struct OptimizationRecord {
  int instance = 0;
  std::uint64_t seed = 0;
  Scenario scenario = Scenario::InjectAfter;
  double e_plain = 0;
  double e_with = 0;
  /// inject: 1 - |E_ideal - E_with| / |E_ideal - E_plain| with E_ideal the
  /// noiseless energy at the shared angles. co/re: 1 - E_with / E_plain.
  double rel_improvement = 0;
  int iters_plain = 0;
  int iters_with = 0;
  double e_ideal = 0;
  /// E_with / E_plain
  double ratio = 0;
  std::string status = "ok";
};

struct BucketStats {
  double mean = 0;
  double std = 0;  // sample standard deviation
  int n = 0;
  int excluded = 0;
};

std::vector<DeltaERecord> run_delta_e(const ExperimentPlan& plan);
std::vector<OptimizationRecord> run_optimization(const ExperimentPlan& plan);

/// Mean/std of ΔE per layer count, rejected records excluded and counted.
std::map<int, BucketStats> summarize_delta_e(const std::vector<DeltaERecord>& recs);
BucketStats summarize_improvement(const std::vector<OptimizationRecord>& recs);
BucketStats summarize(const std::vector<double>& values);

/// P(X >= positives) for X ~ Binomial(trials, 1/2).
double sign_test_p(int positives, int trials);

std::string delta_e_csv(const std::vector<DeltaERecord>& recs);
std::string optimization_csv(const std::vector<OptimizationRecord>& recs);
std::string delta_e_summary_json(const std::vector<DeltaERecord>& recs);
std::string optimization_summary_json(const std::vector<OptimizationRecord>& recs);

/// Calls fn(i) for i in [0, count) on `workers` threads.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

/// MIDSELECT_WORKERS if set and positive, otherwise 1.
int default_workers();

}  // namespace midselect
