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

#include "midselect/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

namespace midselect {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t instance, std::uint64_t purpose) {
  SplitMix64 mix(seed);
  std::uint64_t s = mix.next();
  SplitMix64 a(s ^ (instance * 0xD1B54A32D192ED03ULL));
  s = a.next();
  SplitMix64 b(s ^ (purpose * 0xABC98388FB8FAC03ULL));
  return SplitMix64(b.next());
}

TspInstance sample_instance(std::uint64_t seed, int instance, int cities, CostRange range) {
  if (cities < 2) throw std::invalid_argument("need at least 2 cities");
  if (range.lo > range.hi || range.lo < 0) throw std::invalid_argument("invalid cost range");
  SplitMix64 rng = derive_stream(seed, static_cast<std::uint64_t>(instance), 0);
  std::vector<std::vector<int>> w(static_cast<std::size_t>(cities), std::vector<int>(cities, 0));
  for (int i = 0; i < cities; ++i) {
    for (int j = 0; j < cities; ++j) {
      if (i != j) w[i][j] = static_cast<int>(rng.uniform_int(range.lo, range.hi));
    }
  }
  return TspInstance::with_default_penalty(std::move(w));
}

std::vector<double> sample_angles(std::uint64_t seed, int instance, int layers) {
  SplitMix64 rng = derive_stream(seed, static_cast<std::uint64_t>(instance),
                                 1000 + static_cast<std::uint64_t>(layers));
  std::vector<double> a(static_cast<std::size_t>(2 * layers));
  for (double& v : a) v = 2 * kPi * rng.uniform01();
  return a;
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::DeltaE: return "delta_e";
    case Scenario::InjectAfter: return "inject";
    case Scenario::CoOptimize: return "co";
    case Scenario::ReOptimize: return "re";
  }
  return "?";
}

Scenario parse_scenario(std::string_view s) {
  if (s == "delta_e") return Scenario::DeltaE;
  if (s == "inject" || s == "inject_after") return Scenario::InjectAfter;
  if (s == "co" || s == "co_optimize") return Scenario::CoOptimize;
  if (s == "re" || s == "re_optimize") return Scenario::ReOptimize;
  throw std::invalid_argument("unknown scenario '" + std::string(s) + "'");
}

void ExperimentPlan::validate() const {
  if (cities < 3) throw std::invalid_argument("experiments need at least 3 cities");
  if (instances < 1) throw std::invalid_argument("need at least one instance");
  if (layers.empty()) throw std::invalid_argument("need at least one layer count");
  for (int l : layers) {
    if (l < 1) throw std::invalid_argument("layer counts must be positive");
  }
  if (stride < 1) throw std::invalid_argument("post-selection stride must be positive");
  if (workers < 1) throw std::invalid_argument("worker count must be positive");
}

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  workers = std::max(1, std::min(workers, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

int default_workers() {
  if (const char* env = std::getenv("MIDSELECT_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

namespace {

AnsatzConfig make_config(const QaoaProblem& prob, int layers, int stride, bool bound_check,
                         std::vector<double> angles) {
  AnsatzConfig cfg;
  cfg.registers = prob.registers;
  cfg.width = prob.width;
  cfg.layers = layers;
  cfg.postselect_every = stride;
  cfg.angles = std::move(angles);
  cfg.bound_check = bound_check;
  return cfg;
}

}  // namespace

std::vector<DeltaERecord> run_delta_e(const ExperimentPlan& plan) {
  plan.validate();
  std::vector<int> layers = plan.layers;
  std::sort(layers.begin(), layers.end());
  layers.erase(std::unique(layers.begin(), layers.end()), layers.end());
  std::vector<std::vector<DeltaERecord>> per(static_cast<std::size_t>(plan.instances));
  parallel_for(plan.instances, plan.workers, [&](int i) {
    const auto prob = make_problem(sample_instance(plan.seed, i, plan.cities, plan.costs));
    for (int l : layers) {
      DeltaERecord r;
      r.instance = i;
      r.seed = plan.seed;
      r.layers = l;
      const auto angles = sample_angles(plan.seed, i, l);
      r.e = evaluate(make_config(prob, l, 0, plan.bound_check, angles), prob, NoiseModel::none()).energy;
      r.e_no_mid = evaluate(make_config(prob, l, 0, plan.bound_check, angles), prob, plan.noise).energy;
      try {
        const auto mid =
            evaluate(make_config(prob, l, plan.stride, plan.bound_check, angles), prob, plan.noise);
        r.e_mid = mid.energy;
        r.acc_mid = mid.acc_mid;
        r.acc_final = mid.acc_final;
        r.delta_e = std::abs(r.e - r.e_no_mid) - std::abs(r.e - r.e_mid);
      } catch (const RejectedBranch&) {
        r.rejected = true;
        r.e_mid = std::nan("");
        r.delta_e = std::nan("");
      }
      per[i].push_back(r);
    }
  });
  std::vector<DeltaERecord> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::vector<OptimizationRecord> run_optimization(const ExperimentPlan& plan) {
  plan.validate();
  if (plan.scenario == Scenario::DeltaE) throw std::invalid_argument("not an optimization scenario");
  const int l = plan.layers.front();
  std::vector<OptimizationRecord> out(static_cast<std::size_t>(plan.instances));
  parallel_for(plan.instances, plan.workers, [&](int i) {
    const auto prob = make_problem(sample_instance(plan.seed, i, plan.cities, plan.costs));
    auto objective = [&](int stride) {
      return [&, stride](const std::vector<double>& x) {
        return evaluate(make_config(prob, l, stride, plan.bound_check, x), prob, plan.noise).energy;
      };
    };
    OptimizationRecord r;
    r.instance = i;
    r.seed = plan.seed;
    r.scenario = plan.scenario;
    const auto x0 = sample_angles(plan.seed, i, l);
    try {
      const auto plain = minimize_box(objective(0), x0, plan.optimizer);
      r.iters_plain = plain.iterations;
      r.e_plain = plain.f;
      if (!plain.converged && plain.message != "iteration limit reached") r.status = plain.message;
      switch (plan.scenario) {
        case Scenario::InjectAfter: {
          r.e_with = objective(plan.stride)(plain.x);
          r.e_ideal =
              evaluate(make_config(prob, l, 0, plan.bound_check, plain.x), prob, NoiseModel::none())
                  .energy;
          const double before = std::abs(r.e_ideal - r.e_plain);
          r.rel_improvement = before < 1e-15 ? 0.0 : 1.0 - std::abs(r.e_ideal - r.e_with) / before;
          break;
        }
        case Scenario::CoOptimize:
        case Scenario::ReOptimize: {
          const auto& start = plan.scenario == Scenario::CoOptimize ? x0 : plain.x;
          const auto with = minimize_box(objective(plan.stride), start, plan.optimizer);
          r.iters_with = with.iterations;
          r.e_with = with.f;
          if (!with.converged && with.message != "iteration limit reached") r.status = with.message;
          r.rel_improvement = r.e_plain < 1e-15 ? 0.0 : 1.0 - r.e_with / r.e_plain;
          break;
        }
        case Scenario::DeltaE: break;
      }
      r.ratio = r.e_plain < 1e-15 ? 1.0 : r.e_with / r.e_plain;
    } catch (const std::exception& e) {
      r.status = e.what();
    }
    out[i] = r;
  });
  return out;
}

BucketStats summarize(const std::vector<double>& values) {
  BucketStats s;
  for (double v : values) {
    if (std::isnan(v)) {
      ++s.excluded;
      continue;
    }
    s.mean += v;
    ++s.n;
  }
  if (s.n == 0) return s;
  s.mean /= s.n;
  if (s.n > 1) {
    double ss = 0;
    for (double v : values) {
      if (!std::isnan(v)) ss += (v - s.mean) * (v - s.mean);
    }
    s.std = std::sqrt(ss / (s.n - 1));
  }
  return s;
}

std::map<int, BucketStats> summarize_delta_e(const std::vector<DeltaERecord>& recs) {
  std::map<int, std::vector<double>> by_layer;
  for (const auto& r : recs) by_layer[r.layers].push_back(r.rejected ? std::nan("") : r.delta_e);
  std::map<int, BucketStats> out;
  for (const auto& [l, v] : by_layer) out[l] = summarize(v);
  return out;
}

BucketStats summarize_improvement(const std::vector<OptimizationRecord>& recs) {
  std::vector<double> v;
  for (const auto& r : recs) v.push_back(r.status == "ok" ? r.rel_improvement : std::nan(""));
  return summarize(v);
}

double sign_test_p(int positives, int trials) {
  if (trials < 0 || positives < 0 || positives > trials) throw std::invalid_argument("bad sign-test counts");
  if (positives == 0) return 1.0;
  // Σ_{k >= positives} C(trials, k) / 2^trials, summed in log space.
  double p = 0;
  for (int k = positives; k <= trials; ++k) {
    const double lc = std::lgamma(trials + 1.0) - std::lgamma(k + 1.0) - std::lgamma(trials - k + 1.0);
    p += std::exp(lc - trials * std::log(2.0));
  }
  return std::min(1.0, p);
}

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.17g}", v);
}

nlohmann::json stats_json(const BucketStats& s) {
  nlohmann::json j;
  j["mean"] = s.mean;
  j["std"] = s.std;
  j["n"] = s.n;
  j["excluded"] = s.excluded;
  return j;
}

}  // namespace

std::string delta_e_csv(const std::vector<DeltaERecord>& recs) {
  std::string out = "instance,seed,layers,E,E_no_mid,E_mid,delta_E,acc_mid,acc_final\n";
  for (const auto& r : recs) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.instance, r.seed, r.layers, num(r.e),
                       num(r.e_no_mid), num(r.e_mid), num(r.delta_e), num(r.acc_mid), num(r.acc_final));
  }
  return out;
}

std::string optimization_csv(const std::vector<OptimizationRecord>& recs) {
  std::string out =
      "instance,seed,scenario,E_plain,E_with,rel_improvement,iters_plain,iters_with,E_ideal,ratio,status\n";
  for (const auto& r : recs) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", r.instance, r.seed, to_string(r.scenario),
                       num(r.e_plain), num(r.e_with), num(r.rel_improvement), r.iters_plain,
                       r.iters_with, num(r.e_ideal), num(r.ratio), status);
  }
  return out;
}

std::string delta_e_summary_json(const std::vector<DeltaERecord>& recs) {
  nlohmann::json j = nlohmann::json::object();
  std::vector<double> all;
  for (const auto& [l, s] : summarize_delta_e(recs)) j["layers"][std::to_string(l)] = stats_json(s);
  int pos = 0, nonzero = 0;
  for (const auto& r : recs) {
    if (r.rejected) continue;
    all.push_back(r.delta_e);
    if (std::abs(r.delta_e) > 1e-12) {
      ++nonzero;
      if (r.delta_e > 0) ++pos;
    }
  }
  j["all"] = stats_json(summarize(all));
  j["sign_test"] = {{"positive", pos}, {"nonzero", nonzero}, {"p_value", sign_test_p(pos, nonzero)}};
  return j.dump(1);
}

std::string optimization_summary_json(const std::vector<OptimizationRecord>& recs) {
  nlohmann::json j;
  j["rel_improvement"] = stats_json(summarize_improvement(recs));
  std::vector<double> ratios;
  for (const auto& r : recs) ratios.push_back(r.status == "ok" ? r.ratio : std::nan(""));
  j["ratio"] = stats_json(summarize(ratios));
  return j.dump(1);
}

}  // namespace midselect
