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

// Resource growth checks: a measured metric m(n) fits order f(n) within a
// factor 4 when some C has C/4 <= m(n)/f(n) <= 4C over the whole sweep, i.e.
// max c / min c <= 16 with c = m/f.

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <midselect/builders.hpp>
#include <midselect/resources.hpp>
#include <midselect/transpile.hpp>

namespace scaling {

using midselect::Circuit;
using midselect::McxStrategy;

inline double lg(double x) { return std::log2(x + 1.0); }

struct Row {
  std::string name;
  McxStrategy mcx = McxStrategy::AncillaFree;
  // n -> circuit on n data wires
  std::function<Circuit(int)> build;
  // orders as functions of n (mixed rows close over their l/m split)
  std::function<double(int)> ancilla, gates, depth;
};

struct Measured {
  int n;
  double ancilla, gates, depth;
};

inline Measured measure(const Row& r, int n) {
  const Circuit t = midselect::transpile(r.build(n), r.mcx);
  const auto p = midselect::resources(t);
  // Wires beyond the data register, including any the lowering added.
  return {n, static_cast<double>(t.n_qubits() - n), static_cast<double>(p.gates), static_cast<double>(p.depth)};
}

inline constexpr double kFactor = 4.0;

/// max c / min c for c = measured / order; 1 when the metric is identically zero.
inline double spread(const std::vector<double>& measured, const std::vector<double>& order) {
  double lo = INFINITY, hi = 0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double c = measured[i] / order[i];
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  if (hi == 0) return 1.0;
  return lo == 0 ? INFINITY : hi / lo;
}

inline bool fits(const std::vector<double>& measured, const std::vector<double>& order) {
  return spread(measured, order) <= kFactor * kFactor;
}

inline const std::vector<int>& sweep() {
  static const std::vector<int> ns = {4, 8, 16, 32};
  return ns;
}

/// (l, m) for n = l*m: (2,2), (4,2), (4,4), (8,4).
inline std::pair<int, int> mixed_split(int n) {
  int l = 1, m = 1;
  while (l * m < n) (l <= m ? l : m) *= 2;
  return {l, m};
}

inline std::vector<Row> table_rows() {
  using namespace midselect;
  const McxStrategy F = McxStrategy::AncillaFree, A = McxStrategy::BorrowedAncilla;
  auto one = [](int) { return 1.0; };
  auto n1 = [](int n) { return double(n); };
  auto n2 = [](int n) { return double(n) * n; };
  auto n3 = [](int n) { return double(n) * n * n; };
  auto nlogn = [](int n) { return n * lg(n); };
  auto logn = [](int n) { return lg(n); };
  std::vector<Row> rows = {
      {"khot sigma1", F, [](int n) { return khot_filter(n, n / 2, KHotVariant::SingleAncilla); }, one, nlogn, nlogn},
      {"khot siglog", F, [](int n) { return khot_filter(n, n / 2, KHotVariant::LogAncilla); }, logn, nlogn, n1},
      {"wall inductive", F, [](int n) { return domainwall_filter(n, WallVariant::Inductive); }, one, n1, n1},
      {"wall parallel", F, [](int n) { return domainwall_filter(n, WallVariant::Parallel); }, n1, n1, one},
      {"binary free", F, [](int n) { return binary_bound_filter(n, std::uint64_t{1} << (n - 1)); }, one, n3, n2},
      {"binary anc", A, [](int n) { return binary_bound_filter(n, std::uint64_t{1} << (n - 1)); }, n1, n2, nlogn},
      {"gray free", F, [](int n) { return gray_bound_filter(n, std::uint64_t{1} << (n - 1)); }, one, n3, n2},
      {"gray anc", A, [](int n) { return gray_bound_filter(n, std::uint64_t{1} << (n - 1)); }, n1, n2, nlogn},
      {"onehot compression", F, [](int n) { return onehot_compress(n); }, one, n1, n1},
      {"onehot postselect", F, [](int n) { return onehot_postselect(n, false); }, one, n1, n1},
      {"wall compression", F, [](int n) { return domainwall_compress_postselect(n); }, one, n1, n1},
  };
  // Mixed rows: l groups of m bits, n = l*m, with l and m growing together.
  struct MixedOrders {
    const char* name;
    MixedVariant v;
    McxStrategy s;
    std::function<double(double, double)> a, g, d;
  };
  const std::vector<MixedOrders> mixed = {
      {"mixed sigma1 free", MixedVariant::CountSigma1, F, [](double, double) { return 1.0; },
       [](double l, double m) { return l * m * m * lg(l); }, [](double l, double m) { return l * m * lg(l); }},
      {"mixed sigma1 anc", MixedVariant::CountSigma1, A, [](double, double m) { return m; },
       [](double l, double m) { return l * m * lg(l); }, [](double l, double m) { return l * lg(l) * lg(m); }},
      {"mixed siglog free", MixedVariant::CountSigLog, F, [](double l, double) { return lg(l); },
       [](double l, double m) { return l * m * m * lg(l); }, [](double l, double m) { return l * m; }},
      {"mixed siglog anc", MixedVariant::CountSigLog, A, [](double l, double m) { return m * lg(l); },
       [](double l, double m) { return l * m * lg(l); }, [](double l, double m) { return l * lg(m); }},
      {"mixed store free", MixedVariant::StoreOneHot, F, [](double l, double) { return l; },
       [](double l, double m) { return l * m * m; }, [](double l, double m) { return l + m; }},
      {"mixed store anc", MixedVariant::StoreOneHot, A, [](double l, double m) { return l + m; },
       [](double l, double m) { return l * m; }, [](double l, double m) { return l * lg(m); }},
  };
  for (const auto& mo : mixed) {
    auto wrap = [](std::function<double(double, double)> f) {
      return [f](int n) {
        const auto [l, m] = mixed_split(n);
        return f(l, m);
      };
    };
    const MixedVariant v = mo.v;
    rows.push_back({mo.name, mo.s,
                    [v](int n) {
                      const auto [l, m] = mixed_split(n);
                      return mixed_filter(l, m, v);
                    },
                    wrap(mo.a), wrap(mo.g), wrap(mo.d)});
  }
  return rows;
}

struct RowFit {
  std::string name;
  std::vector<Measured> points;
  double ancilla = 1, gates = 1, depth = 1;  // spreads

  bool ok() const {
    const double lim = kFactor * kFactor;
    return ancilla <= lim && gates <= lim && depth <= lim;
  }
};

inline RowFit fit(const Row& r) {
  RowFit out{r.name, {}};
  std::vector<double> ma, mg, md, oa, og, od;
  for (int n : sweep()) {
    const Measured m = measure(r, n);
    out.points.push_back(m);
    ma.push_back(m.ancilla);
    mg.push_back(m.gates);
    md.push_back(m.depth);
    oa.push_back(r.ancilla(n));
    og.push_back(r.gates(n));
    od.push_back(r.depth(n));
  }
  out.ancilla = spread(ma, oa);
  out.gates = spread(mg, og);
  out.depth = spread(md, od);
  return out;
}

}  // namespace scaling
