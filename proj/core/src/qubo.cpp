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

#include "midselect/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace midselect {

QuboModel::QuboModel(int n) : n_(n), q_(static_cast<std::size_t>(n) * n, 0.0) {
  if (n < 0 || n > 62) throw std::invalid_argument("QUBO variable count must lie in 0..62");
}

double QuboModel::coeff(int i, int j) const {
  if (i > j) std::swap(i, j);
  return q_[static_cast<std::size_t>(i) * n_ + j];
}

void QuboModel::add(int i, int j, double v) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("QUBO index out of range");
  if (i > j) std::swap(i, j);
  q_[static_cast<std::size_t>(i) * n_ + j] += v;
}

double QuboModel::energy(std::uint64_t x) const {
  double e = offset_;
  for (int i = 0; i < n_; ++i) {
    if (!((x >> i) & 1)) continue;
    const double* row = &q_[static_cast<std::size_t>(i) * n_];
    for (int j = i; j < n_; ++j) {
      if ((x >> j) & 1) e += row[j];
    }
  }
  return e;
}

std::vector<double> QuboModel::diagonal() const {
  if (n_ > kMaxSpectrumVars) throw std::invalid_argument("QUBO too large to enumerate");
  std::vector<double> out(std::size_t{1} << n_);
  for (std::uint64_t x = 0; x < out.size(); ++x) out[x] = energy(x);
  return out;
}

QuboModel& QuboModel::operator+=(const QuboModel& o) {
  if (o.n_ != n_) throw std::invalid_argument("QUBO size mismatch");
  for (std::size_t k = 0; k < q_.size(); ++k) q_[k] += o.q_[k];
  offset_ += o.offset_;
  return *this;
}

QuboModel QuboModel::fix(const std::map<int, int>& fixed) const {
  std::vector<int> new_index(static_cast<std::size_t>(n_), -1);
  int next = 0;
  for (int i = 0; i < n_; ++i) {
    if (!fixed.count(i)) new_index[i] = next++;
  }
  for (const auto& [var, val] : fixed) {
    if (var < 0 || var >= n_) throw std::out_of_range("fixed variable out of range");
    if (val != 0 && val != 1) throw std::invalid_argument("fixed value must be 0 or 1");
  }
  QuboModel out(next);
  out.offset_ = offset_;
  for (int i = 0; i < n_; ++i) {
    for (int j = i; j < n_; ++j) {
      const double v = coeff(i, j);
      if (v == 0.0) continue;
      const auto fi = fixed.find(i), fj = fixed.find(j);
      const bool ki = fi != fixed.end(), kj = fj != fixed.end();
      if (ki && kj) {
        out.offset_ += v * fi->second * fj->second;
      } else if (ki) {
        if (fi->second) out.add(new_index[j], new_index[j], v);
      } else if (kj) {
        if (fj->second) out.add(new_index[i], new_index[i], v);
      } else {
        out.add(new_index[i], new_index[j], v);
      }
    }
  }
  return out;
}

IsingModel::IsingModel(int n)
    : n_(n), h_(static_cast<std::size_t>(n), 0.0), j_(static_cast<std::size_t>(n) * n, 0.0) {
  if (n < 0 || n > 62) throw std::invalid_argument("Ising spin count must lie in 0..62");
}

double IsingModel::j(int a, int b) const {
  if (a > b) std::swap(a, b);
  return j_[static_cast<std::size_t>(a) * n_ + b];
}

void IsingModel::add_coupling(int a, int b, double v) {
  if (a == b) throw std::invalid_argument("Ising coupling needs distinct spins");
  if (a < 0 || b < 0 || a >= n_ || b >= n_) throw std::out_of_range("Ising index out of range");
  if (a > b) std::swap(a, b);
  j_[static_cast<std::size_t>(a) * n_ + b] += v;
}

double IsingModel::energy(std::uint64_t x) const {
  auto s = [x](int i) { return ((x >> i) & 1) ? -1.0 : 1.0; };
  double e = offset_;
  for (int i = 0; i < n_; ++i) {
    e -= h_[i] * s(i);
    for (int k = i + 1; k < n_; ++k) e -= j_[static_cast<std::size_t>(i) * n_ + k] * s(i) * s(k);
  }
  return e;
}

IsingModel qubo_to_ising(const QuboModel& q) {
  // x = (1 - s)/2:  c x = c/2 - (c/2) s;  c x_i x_j = c/4 (1 - s_i - s_j + s_i s_j).
  IsingModel m(q.n());
  m.add_offset(q.offset());
  for (int i = 0; i < q.n(); ++i) {
    const double c = q.coeff(i, i);
    if (c != 0.0) {
      m.add_offset(c / 2);
      m.add_field(i, c / 2);
    }
    for (int k = i + 1; k < q.n(); ++k) {
      const double v = q.coeff(i, k);
      if (v == 0.0) continue;
      m.add_offset(v / 4);
      m.add_field(i, v / 4);
      m.add_field(k, v / 4);
      m.add_coupling(i, k, -v / 4);
    }
  }
  return m;
}

QuboModel ising_to_qubo(const IsingModel& m) {
  // s = 1 - 2x:  -h s = -h + 2h x;  -J s_i s_j = -J (1 - 2x_i - 2x_j + 4 x_i x_j).
  QuboModel q(m.n());
  q.add_offset(m.offset());
  for (int i = 0; i < m.n(); ++i) {
    const double h = m.h(i);
    if (h != 0.0) {
      q.add_offset(-h);
      q.add(i, i, 2 * h);
    }
    for (int k = i + 1; k < m.n(); ++k) {
      const double j = m.j(i, k);
      if (j == 0.0) continue;
      q.add_offset(-j);
      q.add(i, i, 2 * j);
      q.add(k, k, 2 * j);
      q.add(i, k, -4 * j);
    }
  }
  return q;
}

Spectrum brute_spectrum(const QuboModel& q, double tie_tol) {
  if (q.n() > kMaxSpectrumVars) {
    throw std::invalid_argument("brute_spectrum is limited to " + std::to_string(kMaxSpectrumVars) +
                                " variables");
  }
  Spectrum s;
  s.energies = q.diagonal();
  s.e_min = *std::min_element(s.energies.begin(), s.energies.end());
  s.e_max = *std::max_element(s.energies.begin(), s.energies.end());
  for (std::uint64_t x = 0; x < s.energies.size(); ++x) {
    if (s.energies[x] - s.e_min <= tie_tol) s.argmin.push_back(x);
  }
  return s;
}

double normalize_energy(double e, double e_min, double e_max) {
  if (!(e_max > e_min)) throw std::domain_error("degenerate spectrum: E_max == E_min");
  return (e - e_min) / (e_max - e_min);
}

// ---------------------------------------------------------------- TSP

TspInstance TspInstance::with_default_penalty(std::vector<std::vector<int>> w) {
  TspInstance t;
  t.n = static_cast<int>(w.size());
  t.w = std::move(w);
  int mx = 0;
  for (int i = 0; i < t.n; ++i) {
    for (int j = 0; j < t.n; ++j) {
      if (i != j && j < static_cast<int>(t.w[i].size())) mx = std::max(mx, t.w[i][j]);
    }
  }
  t.penalty = 2 * mx;
  t.validate();
  return t;
}

void TspInstance::validate() const {
  if (n < 2) throw std::invalid_argument("TSP needs at least 2 cities");
  if (static_cast<int>(w.size()) != n) throw std::invalid_argument("cost matrix must be N x N");
  for (const auto& row : w) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("cost matrix must be N x N");
  }
  if (penalty < 0) throw std::invalid_argument("penalty must be non-negative");
}

TspInstance parse_tsp_instance(std::string_view json_text) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    auto w = j.at("W").get<std::vector<std::vector<int>>>();
    TspInstance t = TspInstance::with_default_penalty(std::move(w));
    if (j.contains("N") && j.at("N").get<int>() != t.n) {
      throw std::invalid_argument("N does not match the cost matrix");
    }
    if (j.contains("A") && !j.at("A").is_null()) {
      t.penalty = j.at("A").get<int>();
      t.validate();
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance JSON: ") + e.what());
  }
}

TspInstance read_tsp_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tsp_instance(ss.str());
}

std::string tsp_instance_to_json(const TspInstance& inst) {
  nlohmann::json j;
  j["N"] = inst.n;
  j["W"] = inst.w;
  j["A"] = inst.penalty;
  return j.dump();
}

namespace {

/// A Σ_groups (1 - Σ_{v ∈ group} x_v)^2 = A Σ (1 - Σ x_v + 2 Σ_{u<v} x_u x_v).
void add_one_hot_penalty(QuboModel& q, const std::vector<int>& group, double a) {
  q.add_offset(a);
  for (std::size_t u = 0; u < group.size(); ++u) {
    q.add(group[u], group[u], -a);
    for (std::size_t v = u + 1; v < group.size(); ++v) q.add(group[u], group[v], 2 * a);
  }
}

std::map<int, int> first_city_fixing(int n) {
  std::map<int, int> fixed;
  fixed[tsp_var(n, 0, 0)] = 1;
  for (int i = 1; i < n; ++i) fixed[tsp_var(n, 0, i)] = 0;
  for (int t = 1; t < n; ++t) fixed[tsp_var(n, t, 0)] = 0;
  return fixed;
}

}  // namespace

QuboModel TspQuboParts::total() const {
  QuboModel q = time_penalty;
  q += city_penalty;
  q += route;
  return q;
}

TspQuboParts tsp_qubo_parts(const TspInstance& inst) {
  inst.validate();
  const int n = inst.n;
  const double a = inst.penalty;
  TspQuboParts p{QuboModel(n * n), QuboModel(n * n), QuboModel(n * n)};
  for (int t = 0; t < n; ++t) {
    std::vector<int> g;
    for (int i = 0; i < n; ++i) g.push_back(tsp_var(n, t, i));
    add_one_hot_penalty(p.time_penalty, g, a);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<int> g;
    for (int t = 0; t < n; ++t) g.push_back(tsp_var(n, t, i));
    add_one_hot_penalty(p.city_penalty, g, a);
  }
  for (int t = 0; t < n; ++t) {
    const int next = (t + 1) % n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || inst.w[i][j] == 0) continue;
        p.route.add(tsp_var(n, t, i), tsp_var(n, next, j), inst.w[i][j]);
      }
    }
  }
  return p;
}

QuboModel tsp_qubo(const TspInstance& inst) { return tsp_qubo_parts(inst).total(); }

TspQuboParts reduced_tsp_qubo_parts(const TspInstance& inst) {
  const auto full = tsp_qubo_parts(inst);
  const auto fixed = first_city_fixing(inst.n);
  return {full.time_penalty.fix(fixed), full.city_penalty.fix(fixed), full.route.fix(fixed)};
}

QuboModel reduced_tsp_qubo(const TspInstance& inst) { return reduced_tsp_qubo_parts(inst).total(); }

std::uint64_t tour_assignment(int n, const std::vector<int>& tour) {
  if (static_cast<int>(tour.size()) != n) throw std::invalid_argument("tour length must equal N");
  std::uint64_t x = 0;
  for (int t = 0; t < n; ++t) x |= std::uint64_t{1} << tsp_var(n, t, tour[t]);
  return x;
}

std::uint64_t reduced_tour_assignment(int n, const std::vector<int>& tour) {
  if (static_cast<int>(tour.size()) != n || tour[0] != 0) {
    throw std::invalid_argument("reduced tours start at city 0 and visit N cities");
  }
  std::uint64_t x = 0;
  for (int t = 1; t < n; ++t) x |= std::uint64_t{1} << ((t - 1) * (n - 1) + (tour[t] - 1));
  return x;
}

long long tour_cost(const TspInstance& inst, const std::vector<int>& tour) {
  long long c = 0;
  for (int t = 0; t < inst.n; ++t) c += inst.w[tour[t]][tour[(t + 1) % inst.n]];
  return c;
}

}  // namespace midselect
