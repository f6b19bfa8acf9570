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

#include "midselect/transpile.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <numeric>
#include <stdexcept>
#include <string>

namespace midselect {

std::string_view to_string(McxStrategy s) {
  return s == McxStrategy::AncillaFree ? "ancilla_free" : "borrowed_ancilla";
}

McxStrategy parse_mcx_strategy(std::string_view name) {
  if (name == "ancilla_free" || name == "free") return McxStrategy::AncillaFree;
  if (name == "borrowed_ancilla" || name == "borrowed" || name == "ancilla") {
    return McxStrategy::BorrowedAncilla;
  }
  throw std::invalid_argument("unknown mcx strategy: " + std::string(name));
}

namespace {

bool near_identity_up_to_phase(const Mat2& m) {
  return std::abs(m(0, 1)) < 1e-14 && std::abs(m(1, 0)) < 1e-14 &&
         std::abs(m(0, 0) - m(1, 1)) < 1e-14;
}

class Lowering {
 public:
  Lowering(const Circuit& src, const TranspileOptions& opts)
      : opts_(opts),
        n_(src.n_qubits()),
        ancilla_(src.ancilla()),
        busy_(src.n_qubits(), 0),
        last_u1q_(src.n_qubits(), -1),
        uses_(src.n_qubits()) {
    for (std::size_t i = 0; i < src.instructions().size(); ++i) {
      for (int w : wires_of(src.instructions()[i])) uses_[w].push_back(static_cast<int>(i));
    }
  }

  Circuit finish() && {
    Circuit out(n_);
    for (int a : ancilla_) out.mark_ancilla(a);
    for (std::size_t i = 0; i < insts_.size(); ++i) {
      if (const auto* g = std::get_if<Gate>(&insts_[i]);
          g && g->kind == GateKind::U1q && near_identity_up_to_phase(g->matrix)) {
        continue;
      }
      out.add(std::move(insts_[i]));
    }
    return out;
  }

  void lower(const Instruction& inst, int index) {
    cursor_ = index;
    if (const auto* g = std::get_if<Gate>(&inst)) {
      lower_gate(*g);
    } else if (const auto* mx = std::get_if<MeasureX>(&inst)) {
      u1q(mat2::h(), mx->wire);
      emit(MeasureZ{mx->wire});
    } else {
      emit(inst);
    }
  }

 private:
  // --- emission -----------------------------------------------------------

  void emit(Instruction inst) {
    const auto wires = wires_of(inst);
    int slot = 0;
    for (int w : wires) slot = std::max(slot, busy_[w]);
    for (int w : wires) {
      busy_[w] = slot + 1;
      last_u1q_[w] = -1;
    }
    insts_.push_back(std::move(inst));
  }

  void u1q(const Mat2& m, int w) {
    if (opts_.merge_single_qubit && last_u1q_[w] >= 0) {
      auto& prev = std::get<Gate>(insts_[last_u1q_[w]]);
      prev.matrix = m * prev.matrix;
      return;
    }
    if (near_identity_up_to_phase(m)) return;
    emit(Gate::u1q(m, w));
    last_u1q_[w] = static_cast<int>(insts_.size()) - 1;
  }

  void x(int w) { u1q(mat2::x(), w); }
  void cx(int c, int t) { emit(Gate::cnot(c, t)); }

  // --- wire management ----------------------------------------------------

  int start_slot(std::span<const int> wires) const {
    int s = 0;
    for (int w : wires) s = std::max(s, busy_[w]);
    return s;
  }

  int new_wire(bool as_ancilla) {
    const int w = n_++;
    busy_.push_back(0);
    last_u1q_.push_back(-1);
    if (as_ancilla) ancilla_.push_back(w);
    return w;
  }

  /// Clean |0> wires from the pool, preferring ones idle by `slot`.
  std::vector<int> acquire_clean(std::size_t count, int slot) {
    std::vector<int> free;
    for (int w : pool_) {
      if (busy_[w] <= slot) free.push_back(w);
    }
    std::sort(free.begin(), free.end(), [&](int a, int b) { return busy_[a] < busy_[b]; });
    if (free.size() > count) free.resize(count);
    while (free.size() < count) {
      const int w = new_wire(true);
      pool_.push_back(w);
      free.push_back(w);
    }
    return free;
  }

  /// Index of the next source instruction after the current one touching `w`.
  int next_use(int w) const {
    if (w >= static_cast<int>(uses_.size())) return std::numeric_limits<int>::max();
    const auto& u = uses_[w];
    const auto it = std::upper_bound(u.begin(), u.end(), cursor_);
    return it == u.end() ? std::numeric_limits<int>::max() : *it;
  }

  /// Up to `count` wires outside `exclude` whose state is borrowed and restored.
  /// Wires already idle are preferred, and among those the ones the source
  /// circuit needs last, so borrowing does not stall the following gates.
  std::vector<int> acquire_dirty(std::size_t count, std::span<const int> exclude) const {
    const int slot = start_slot(exclude);
    std::vector<int> cand;
    for (int w = 0; w < n_; ++w) {
      if (std::find(exclude.begin(), exclude.end(), w) != exclude.end()) continue;
      if (std::find(pool_.begin(), pool_.end(), w) != pool_.end()) continue;
      cand.push_back(w);
    }
    auto key = [&](int w) { return std::tuple(busy_[w] > slot, -next_use(w), busy_[w]); };
    std::stable_sort(cand.begin(), cand.end(), [&](int a, int b) { return key(a) < key(b); });
    if (cand.size() > count) cand.resize(count);
    return cand;
  }

  // --- primitives ---------------------------------------------------------

  void toffoli(int c0, int c1, int t) {
    const Mat2 tg = mat2::t(), tdg = mat2::t().adjoint();
    u1q(mat2::h(), t);
    cx(c1, t);
    u1q(tdg, t);
    cx(c0, t);
    u1q(tg, t);
    cx(c1, t);
    u1q(tdg, t);
    cx(c0, t);
    u1q(tg, c1);
    u1q(tg, t);
    u1q(mat2::h(), t);
    cx(c0, c1);
    u1q(tg, c0);
    u1q(tdg, c1);
    cx(c0, c1);
  }

  /// Controlled-U via the A X B X C construction.
  void cu(const Mat2& m, int c, int t) {
    const ZyzAngles a = zyz_decompose(m);
    const Mat2 ma = mat2::rz(a.beta) * mat2::ry(a.gamma / 2);
    const Mat2 mb = mat2::ry(-a.gamma / 2) * mat2::rz(-(a.delta + a.beta) / 2);
    const Mat2 mc = mat2::rz((a.delta - a.beta) / 2);
    u1q(mc, t);
    cx(c, t);
    u1q(mb, t);
    cx(c, t);
    u1q(ma, t);
    u1q(mat2::phase(a.alpha), c);
  }

  /// Multi-controlled X on closed controls with `dirty.size() >= ctrls.size() - 2`
  /// borrowed wires. 4(m-2) Toffolis.
  void vchain(std::span<const int> x, int t, std::span<const int> a) {
    const std::size_t m = x.size();
    if (m == 1) return cx(x[0], t);
    if (m == 2) return toffoli(x[0], x[1], t);
    if (a.size() < m - 2) throw std::logic_error("vchain: not enough borrowed wires");
    auto descend = [&] {
      for (std::size_t i = m - 2; i >= 2; --i) toffoli(x[i], a[i - 2], a[i - 1]);
    };
    auto ascend = [&] {
      for (std::size_t i = 2; i <= m - 2; ++i) toffoli(x[i], a[i - 2], a[i - 1]);
    };
    toffoli(x[m - 1], a[m - 3], t);
    descend();
    toffoli(x[0], x[1], a[0]);
    ascend();
    toffoli(x[m - 1], a[m - 3], t);
    descend();
    toffoli(x[0], x[1], a[0]);
    ascend();
  }

  /// Multi-controlled X with one borrowed wire `b`: split controls in two halves.
  void mcx_one_borrowed(std::span<const int> ctrls, int t, int b) {
    const std::size_t k = ctrls.size();
    const std::size_t m1 = (k + 1) / 2;
    std::vector<int> c1(ctrls.begin(), ctrls.begin() + static_cast<long>(m1));
    std::vector<int> c2(ctrls.begin() + static_cast<long>(m1), ctrls.end());
    std::vector<int> dirty1 = c2;
    dirty1.push_back(t);
    std::vector<int> c2b = c2;
    c2b.push_back(b);
    for (int rep = 0; rep < 2; ++rep) {
      vchain(c1, b, dirty1);
      vchain(c2b, t, c1);
    }
  }

  void mcx_clean_tree(std::span<const int> ctrls, int t) {
    const std::size_t k = ctrls.size();
    std::vector<int> all(ctrls.begin(), ctrls.end());
    all.push_back(t);
    auto anc = acquire_clean(k - 2, start_slot(all));
    struct Step {
      int a, b, out;
    };
    std::vector<Step> steps;
    std::vector<int> level(ctrls.begin(), ctrls.end());
    std::size_t next = 0;
    while (level.size() > 2) {
      std::vector<int> up;
      for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
        const int o = anc[next++];
        steps.push_back({level[i], level[i + 1], o});
        up.push_back(o);
      }
      if (level.size() % 2) up.push_back(level.back());
      level = std::move(up);
    }
    for (const auto& s : steps) toffoli(s.a, s.b, s.out);
    toffoli(level[0], level[1], t);
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) toffoli(it->a, it->b, it->out);
  }

  void mcx(std::span<const int> ctrls, int t) {
    const std::size_t k = ctrls.size();
    if (k == 0) return x(t);
    if (k == 1) return cx(ctrls[0], t);
    if (k == 2) return toffoli(ctrls[0], ctrls[1], t);
    if (opts_.mcx == McxStrategy::BorrowedAncilla) return mcx_clean_tree(ctrls, t);
    std::vector<int> used(ctrls.begin(), ctrls.end());
    used.push_back(t);
    const auto spare = acquire_dirty(1, used);
    if (!spare.empty()) return mcx_one_borrowed(ctrls, t, spare[0]);
    mcu(mat2::x(), ctrls, t);
  }

  /// Multi-controlled single-qubit unitary.
  void mcu(const Mat2& m, std::span<const int> ctrls, int t) {
    const std::size_t k = ctrls.size();
    if (k == 0) return u1q(m, t);
    if (k == 1) return cu(m, ctrls[0], t);
    if (opts_.mcx == McxStrategy::BorrowedAncilla) {
      std::vector<int> all(ctrls.begin(), ctrls.end());
      all.push_back(t);
      const int a = acquire_clean(1, start_slot(all))[0];
      // Keep `a` out of the pool while it carries the conjunction.
      pool_.erase(std::find(pool_.begin(), pool_.end(), a));
      mcx(ctrls, a);
      cu(m, a, t);
      mcx(ctrls, a);
      pool_.push_back(a);
      return;
    }
    // Λ_k(U) = Λ_{k-1}(V) · Λ_{k-1}X · CV† · Λ_{k-1}X · CV with V² = U.
    const Mat2 v = sqrt_unitary(m);
    const int last = ctrls[k - 1];
    const auto rest = ctrls.first(k - 1);
    cu(v, last, t);
    mcx(rest, last);
    cu(v.adjoint(), last, t);
    mcx(rest, last);
    mcu(v, rest, t);
  }

  template <typename F>
  void with_polarity(const Gate& g, F&& body) {
    const auto ctrls = g.controls();
    for (std::size_t i = 0; i < ctrls.size(); ++i) {
      if (!g.polarity[i]) x(ctrls[i]);
    }
    body();
    for (std::size_t i = 0; i < ctrls.size(); ++i) {
      if (!g.polarity[i]) x(ctrls[i]);
    }
  }

  void lower_gate(const Gate& g) {
    switch (g.kind) {
      case GateKind::Barrier: return;
      case GateKind::U1q: return u1q(g.matrix, g.wires[0]);
      case GateKind::CNOT:
        return with_polarity(g, [&] { cx(g.wires[0], g.wires[1]); });
      case GateKind::SWAP:
        cx(g.wires[0], g.wires[1]);
        cx(g.wires[1], g.wires[0]);
        cx(g.wires[0], g.wires[1]);
        return;
      case GateKind::MCX:
        return with_polarity(g, [&] { mcx(g.controls(), g.target()); });
      case GateKind::ControlledPhase:
        return with_polarity(g, [&] {
          const auto ctrls = g.controls();
          const int t = g.target();
          if (ctrls.size() == 1) {
            const double h = g.angle / 2;
            u1q(mat2::phase(h), ctrls[0]);
            cx(ctrls[0], t);
            u1q(mat2::phase(-h), t);
            cx(ctrls[0], t);
            u1q(mat2::phase(h), t);
          } else {
            mcu(mat2::phase(g.angle), ctrls, t);
          }
        });
      case GateKind::XXPlusYY: {
        const int a = g.wires[0], b = g.wires[1];
        cx(a, b);
        cu(mat2::rx(4 * g.angle), b, a);
        cx(a, b);
        return;
      }
    }
    throw std::invalid_argument("transpile: unknown gate kind");
  }

  TranspileOptions opts_;
  int n_;
  std::vector<int> ancilla_;
  std::vector<int> busy_;
  std::vector<int> last_u1q_;
  std::vector<int> pool_;
  std::vector<Instruction> insts_;
  std::vector<std::vector<int>> uses_;
  int cursor_ = 0;
};

}  // namespace

Circuit transpile(const Circuit& c, const TranspileOptions& opts) {
  Lowering low(c, opts);
  for (std::size_t i = 0; i < c.instructions().size(); ++i) {
    low.lower(c.instructions()[i], static_cast<int>(i));
  }
  return std::move(low).finish();
}

Circuit transpile(const Circuit& c, McxStrategy strategy) {
  TranspileOptions o;
  o.mcx = strategy;
  return transpile(c, o);
}

bool is_transpiled(const Circuit& c) {
  return std::all_of(c.instructions().begin(), c.instructions().end(), [](const Instruction& i) {
    if (const auto* g = std::get_if<Gate>(&i)) {
      return g->kind == GateKind::U1q || (g->kind == GateKind::CNOT && g->polarity[0]);
    }
    return !std::holds_alternative<MeasureX>(i);
  });
}

}  // namespace midselect
