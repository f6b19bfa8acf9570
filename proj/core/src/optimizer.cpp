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

#include "midselect/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace midselect {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class Problem {
 public:
  Problem(const Objective& f, const OptimizeOptions& o) : f_(f), o_(o) {}

  double value(const std::vector<double>& x) {
    if (evals_ >= o_.max_evaluations) throw std::runtime_error("evaluation budget exhausted");
    ++evals_;
    const double v = f_(x);
    if (!std::isfinite(v)) throw std::runtime_error("objective returned a non-finite value");
    return v;
  }

  std::vector<double> gradient(std::vector<double> x, double fx) {
    std::vector<double> g(x.size());
    const double h = o_.fd_step;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double xi = x[i];
      const bool up = xi + h <= o_.upper, down = xi - h >= o_.lower;
      if (up && down) {
        x[i] = xi + h;
        const double fp = value(x);
        x[i] = xi - h;
        const double fm = value(x);
        g[i] = (fp - fm) / (2 * h);
      } else if (up) {
        x[i] = xi + h;
        g[i] = (value(x) - fx) / h;
      } else {
        x[i] = xi - h;
        g[i] = (fx - value(x)) / h;
      }
      x[i] = xi;
    }
    return g;
  }

  void project(std::vector<double>& x) const {
    for (double& v : x) v = std::clamp(v, o_.lower, o_.upper);
  }

  /// Zero for components pinned at a bound by the gradient.
  std::vector<double> projected_gradient(const std::vector<double>& x,
                                         const std::vector<double>& g) const {
    std::vector<double> pg(g);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if ((x[i] <= o_.lower && g[i] > 0) || (x[i] >= o_.upper && g[i] < 0)) pg[i] = 0;
    }
    return pg;
  }

  int evaluations() const { return evals_; }

 private:
  const Objective& f_;
  const OptimizeOptions& o_;
  int evals_ = 0;
};

struct Pair {
  std::vector<double> s, y;
  double rho;
};

std::vector<double> two_loop(const std::vector<double>& g, const std::deque<Pair>& mem,
                             const std::vector<char>& active) {
  std::vector<double> q(g);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (active[i]) q[i] = 0;
  }
  std::vector<double> alpha(mem.size());
  for (std::size_t k = mem.size(); k-- > 0;) {
    alpha[k] = mem[k].rho * dot(mem[k].s, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] -= alpha[k] * mem[k].y[i];
  }
  if (!mem.empty()) {
    const auto& last = mem.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& v : q) v *= gamma;
  }
  for (std::size_t k = 0; k < mem.size(); ++k) {
    const double beta = mem[k].rho * dot(mem[k].y, q);
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += (alpha[k] - beta) * mem[k].s[i];
  }
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = active[i] ? 0.0 : -q[i];
  return q;
}

}  // namespace

OptimizeResult minimize_box(const Objective& f, std::vector<double> x0, const OptimizeOptions& opts) {
  if (!(opts.upper > opts.lower)) throw std::invalid_argument("empty optimization box");
  if (opts.fd_step <= 0) throw std::invalid_argument("finite-difference step must be positive");
  Problem prob(f, opts);
  OptimizeResult res;
  prob.project(x0);
  std::vector<double> x = std::move(x0);
  std::deque<Pair> mem;
  try {
    double fx = prob.value(x);
    std::vector<double> g = prob.gradient(x, fx);
    res.trace.push_back(fx);
    res.message = "iteration limit reached";
    for (int it = 0; it < opts.max_iterations; ++it) {
      const auto pg = prob.projected_gradient(x, g);
      double pg_norm = 0;
      for (double v : pg) pg_norm = std::max(pg_norm, std::abs(v));
      if (pg_norm <= opts.pgtol) {
        res.converged = true;
        res.message = "projected gradient below tolerance";
        break;
      }
      std::vector<char> active(x.size(), 0);
      for (std::size_t i = 0; i < x.size(); ++i) active[i] = pg[i] == 0 && g[i] != 0;
      std::vector<double> d = two_loop(g, mem, active);
      if (dot(d, g) >= 0) {
        mem.clear();
        d = pg;
        for (double& v : d) v = -v;
      }
      double step = 1.0;
      if (mem.empty()) {
        double dn = 0;
        for (double v : d) dn = std::max(dn, std::abs(v));
        step = std::min(1.0, 1.0 / dn);
      }
      std::vector<double> xn;
      double fn = fx;
      bool accepted = false;
      for (int bt = 0; bt < 40; ++bt) {
        xn = x;
        for (std::size_t i = 0; i < x.size(); ++i) xn[i] += step * d[i];
        prob.project(xn);
        double decrease = 0;
        for (std::size_t i = 0; i < x.size(); ++i) decrease += g[i] * (xn[i] - x[i]);
        fn = prob.value(xn);
        if (fn <= fx + 1e-4 * decrease && decrease < 0) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) {
        res.converged = true;
        res.message = "line search made no progress";
        break;
      }
      std::vector<double> gn = prob.gradient(xn, fn);
      Pair p;
      p.s.resize(x.size());
      p.y.resize(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        p.s[i] = xn[i] - x[i];
        p.y[i] = gn[i] - g[i];
      }
      const double sy = dot(p.s, p.y);
      if (sy > 1e-12 * std::max(1.0, dot(p.y, p.y))) {
        p.rho = 1.0 / sy;
        mem.push_back(std::move(p));
        if (static_cast<int>(mem.size()) > opts.history) mem.pop_front();
      }
      const double rel = (fx - fn) / std::max({std::abs(fx), std::abs(fn), 1.0});
      x = std::move(xn);
      g = std::move(gn);
      fx = fn;
      res.trace.push_back(fx);
      res.iterations = it + 1;
      if (rel <= opts.ftol) {
        res.converged = true;
        res.message = "relative reduction below ftol";
        break;
      }
    }
    res.x = x;
    res.f = fx;
  } catch (const std::runtime_error& e) {
    res.x = x;
    res.f = res.trace.empty() ? std::nan("") : res.trace.back();
    res.converged = false;
    res.message = e.what();
  }
  res.evaluations = prob.evaluations();
  return res;
}

}  // namespace midselect
