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

#include <benchmark/benchmark.h>

#include <random>

#include <midselect/builders.hpp>
#include <midselect/density.hpp>
#include <midselect/experiments.hpp>
#include <midselect/qaoa.hpp>
#include <midselect/transpile.hpp>

using namespace midselect;

namespace {

void BM_DensitySingleQubit(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DensityState st = DensityState::maximally_mixed(n);
  const Mat2 u = mat2::ry(0.3);
  int w = 0;
  for (auto _ : state) {
    st.apply_1q(u, w);
    w = (w + 1) % n;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DensitySingleQubit)->DenseRange(6, 12, 2);

void BM_DensityCnotDepolarized(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DensityState st = DensityState::maximally_mixed(n);
  const NoiseModel noise(NoiseFamily::Depolarizing, 0.01);
  int w = 0;
  for (auto _ : state) {
    apply_gate(st, Gate::cnot(w, (w + 1) % n), noise);
    w = (w + 1) % n;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DensityCnotDepolarized)->DenseRange(6, 12, 2);

void BM_TranspileBinaryBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Circuit c = binary_bound_filter(n, (std::uint64_t{1} << n) - 2);
  for (auto _ : state) benchmark::DoNotOptimize(transpile(c));
}
BENCHMARK(BM_TranspileBinaryBound)->RangeMultiplier(2)->Range(4, 32);

void BM_QaoaEvaluate(benchmark::State& state) {
  const int layers = static_cast<int>(state.range(0));
  const auto prob = make_problem(sample_instance(0, 0, 3));
  AnsatzConfig cfg;
  cfg.registers = prob.registers;
  cfg.width = prob.width;
  cfg.layers = layers;
  cfg.postselect_every = 2;
  cfg.angles = sample_angles(0, 0, layers);
  const NoiseModel noise(NoiseFamily::RandomX, 0.01);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(cfg, prob, noise));
}
BENCHMARK(BM_QaoaEvaluate)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
