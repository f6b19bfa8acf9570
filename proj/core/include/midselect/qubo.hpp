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
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace midselect {

/// Σ_{i<=j} x_i Q_ij x_j + offset over x ∈ {0,1}^n. Bit i of an assignment index is x_i.
/// Diagonal entries are linear terms.
class QuboModel {
 public:
  QuboModel() = default;
  explicit QuboModel(int n);

  int n() const { return n_; }
  double offset() const { return offset_; }
  /// Q_ij for i <= j (arguments are reordered).
  double coeff(int i, int j) const;

  /// Adds v to Q_min(i,j),max(i,j).
  void add(int i, int j, double v);
  void add_offset(double v) { offset_ += v; }

  double energy(std::uint64_t x) const;
  /// energy() for every assignment; n <= 24.
  std::vector<double> diagonal() const;

  QuboModel& operator+=(const QuboModel& o);

  /// Substitutes fixed values and reindexes the remaining variables in order.
  QuboModel fix(const std::map<int, int>& fixed) const;

 private:
  int n_ = 0;
  std::vector<double> q_;  // row-major n×n, upper triangle used
  double offset_ = 0.0;
};

/// H = -Σ_{i<j} J_ij Z_i Z_j - Σ_j h_j Z_j + offset. Z_i = s_i with s_i = 1 - 2 x_i.
class IsingModel {
 public:
  IsingModel() = default;
  explicit IsingModel(int n);

  int n() const { return n_; }
  double h(int i) const { return h_[i]; }
  double j(int a, int b) const;
  double offset() const { return offset_; }

  void add_field(int i, double v) { h_[i] += v; }
  void add_coupling(int a, int b, double v);
  void add_offset(double v) { offset_ += v; }

  double energy(std::uint64_t x) const;

 private:
  int n_ = 0;
  std::vector<double> h_;
  std::vector<double> j_;
  double offset_ = 0.0;
};

IsingModel qubo_to_ising(const QuboModel& q);
QuboModel ising_to_qubo(const IsingModel& m);

struct Spectrum {
  double e_min = 0;
  double e_max = 0;
  std::vector<double> energies;
  std::vector<std::uint64_t> argmin;
};

inline constexpr int kMaxSpectrumVars = 24;

Spectrum brute_spectrum(const QuboModel& q, double tie_tol = 1e-9);

double normalize_energy(double e, double e_min, double e_max);

// ---------------------------------------------------------------- TSP

struct TspInstance {
  int n = 0;                          // cities
  std::vector<std::vector<int>> w;    // cost matrix, diagonal ignored
  int penalty = 0;                    // A

  /// Sets A = 2 max W (off-diagonal).
  static TspInstance with_default_penalty(std::vector<std::vector<int>> w);
  void validate() const;
};

TspInstance read_tsp_instance(const std::filesystem::path& path);
TspInstance parse_tsp_instance(std::string_view json_text);
std::string tsp_instance_to_json(const TspInstance& inst);

/// Variable index of b_{t,i} (time t, city i, both 0-based) in the full model.
inline int tsp_var(int n, int t, int i) { return t * n + i; }

struct TspQuboParts {
  QuboModel time_penalty;  // A Σ_t (1 - Σ_i b_ti)^2: one city per time point
  QuboModel city_penalty;  // A Σ_i (1 - Σ_t b_ti)^2: every city exactly once
  QuboModel route;         // Σ_{i≠j} W_ij Σ_t b_{t,i} b_{t+1,j}, cyclic in t
  QuboModel total() const;
};

TspQuboParts tsp_qubo_parts(const TspInstance& inst);
QuboModel tsp_qubo(const TspInstance& inst);

/// Fixes city 0 at time 0. Remaining variable (t, i), t, i >= 1, lands on
/// (t-1)(N-1) + (i-1), so register t-1 holds time point t.
TspQuboParts reduced_tsp_qubo_parts(const TspInstance& inst);
QuboModel reduced_tsp_qubo(const TspInstance& inst);

/// Assignment of the full model for a tour given as a city per time point.
std::uint64_t tour_assignment(int n, const std::vector<int>& tour);
/// Assignment of the reduced model for a tour that starts at city 0.
std::uint64_t reduced_tour_assignment(int n, const std::vector<int>& tour);
/// Cost of the closed tour.
long long tour_cost(const TspInstance& inst, const std::vector<int>& tour);

}  // namespace midselect
