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

#include "midselect/circuit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace midselect {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::U1q: return "u1q";
    case GateKind::CNOT: return "cnot";
    case GateKind::SWAP: return "swap";
    case GateKind::MCX: return "mcx";
    case GateKind::ControlledPhase: return "cphase";
    case GateKind::XXPlusYY: return "xxpyy";
    case GateKind::Barrier: return "barrier";
  }
  return "unknown";
}

namespace {

void check_distinct(const std::vector<int>& wires) {
  std::vector<int> sorted = wires;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("gate wires must be distinct");
  }
}

std::vector<bool> closed_polarity(std::size_t n, std::vector<bool> given) {
  if (given.empty()) return std::vector<bool>(n, true);
  if (given.size() != n) {
    throw std::invalid_argument("polarity list length must equal control count");
  }
  return given;
}

}  // namespace

Gate Gate::u1q(const Mat2& m, int wire) {
  if (!is_unitary(m)) throw std::invalid_argument("u1q matrix is not unitary");
  Gate g;
  g.kind = GateKind::U1q;
  g.wires = {wire};
  g.matrix = m;
  return g;
}

Gate Gate::cnot(int control, int target, bool closed) {
  Gate g;
  g.kind = GateKind::CNOT;
  g.wires = {control, target};
  g.polarity = {closed};
  check_distinct(g.wires);
  return g;
}

Gate Gate::swap(int a, int b) {
  Gate g;
  g.kind = GateKind::SWAP;
  g.wires = {a, b};
  check_distinct(g.wires);
  return g;
}

Gate Gate::mcx(std::vector<int> controls, int target, std::vector<bool> polarity) {
  Gate g;
  g.kind = GateKind::MCX;
  g.polarity = closed_polarity(controls.size(), std::move(polarity));
  g.wires = std::move(controls);
  g.wires.push_back(target);
  check_distinct(g.wires);
  return g;
}

Gate Gate::controlled_phase(std::vector<int> controls, int target, double phi,
                            std::vector<bool> polarity) {
  Gate g;
  g.kind = GateKind::ControlledPhase;
  g.polarity = closed_polarity(controls.size(), std::move(polarity));
  g.wires = std::move(controls);
  g.wires.push_back(target);
  g.angle = phi;
  check_distinct(g.wires);
  return g;
}

Gate Gate::xx_plus_yy(int a, int b, double theta) {
  Gate g;
  g.kind = GateKind::XXPlusYY;
  g.wires = {a, b};
  g.angle = theta;
  check_distinct(g.wires);
  return g;
}

Gate Gate::barrier(std::vector<int> wires) {
  Gate g;
  g.kind = GateKind::Barrier;
  g.wires = std::move(wires);
  return g;
}

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::U1q: g.matrix = matrix.adjoint(); break;
    case GateKind::ControlledPhase:
    case GateKind::XXPlusYY: g.angle = -angle; break;
    case GateKind::CNOT:
    case GateKind::SWAP:
    case GateKind::MCX:
    case GateKind::Barrier: break;
  }
  return g;
}

std::vector<int> wires_of(const Instruction& inst) {
  struct Visitor {
    std::vector<int> operator()(const Gate& g) const { return g.wires; }
    std::vector<int> operator()(const MeasureZ& m) const { return {m.wire}; }
    std::vector<int> operator()(const MeasureX& m) const { return {m.wire}; }
    std::vector<int> operator()(const PostSelectZero& p) const { return p.wires; }
    std::vector<int> operator()(const Reset& r) const { return {r.wire}; }
  };
  return std::visit(Visitor{}, inst);
}

bool is_gate(const Instruction& inst) { return std::holds_alternative<Gate>(inst); }

Circuit::Circuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0) throw std::invalid_argument("qubit count must be non-negative");
}

std::vector<int> Circuit::data_wires() const {
  std::vector<int> out;
  for (int w = 0; w < n_qubits_; ++w) {
    if (!is_ancilla(w)) out.push_back(w);
  }
  return out;
}

bool Circuit::is_ancilla(int wire) const {
  return std::binary_search(ancilla_.begin(), ancilla_.end(), wire);
}

int Circuit::add_qubits(int count, bool as_ancilla) {
  if (count < 0) throw std::invalid_argument("cannot add a negative number of qubits");
  const int first = n_qubits_;
  n_qubits_ += count;
  if (as_ancilla) {
    for (int w = first; w < n_qubits_; ++w) ancilla_.push_back(w);
  }
  return first;
}

void Circuit::mark_ancilla(int wire) {
  if (wire < 0 || wire >= n_qubits_) throw std::out_of_range("ancilla wire out of range");
  auto it = std::lower_bound(ancilla_.begin(), ancilla_.end(), wire);
  if (it == ancilla_.end() || *it != wire) ancilla_.insert(it, wire);
}

void Circuit::check_wires(const Instruction& inst) const {
  const auto wires = wires_of(inst);
  for (int w : wires) {
    if (w < 0 || w >= n_qubits_) {
      throw std::out_of_range("instruction references wire " + std::to_string(w) +
                              " outside a " + std::to_string(n_qubits_) + "-qubit circuit");
    }
  }
  if (const auto* p = std::get_if<PostSelectZero>(&inst); p && p->wires.empty()) {
    throw std::invalid_argument("post-selection needs at least one wire");
  }
}

Circuit& Circuit::add(Instruction inst) {
  check_wires(inst);
  instructions_.push_back(std::move(inst));
  return *this;
}

Circuit& Circuit::add(std::span<const Instruction> insts) {
  for (const auto& inst : insts) add(inst);
  return *this;
}

namespace {

Instruction remap(const Instruction& inst, std::span<const int> map) {
  auto m = [&](int w) {
    if (w < 0 || static_cast<std::size_t>(w) >= map.size()) {
      throw std::out_of_range("wire map does not cover the sub-circuit");
    }
    return map[w];
  };
  struct Visitor {
    decltype(m)& f;
    Instruction operator()(Gate g) const {
      for (int& w : g.wires) w = f(w);
      return g;
    }
    Instruction operator()(MeasureZ x) const { return MeasureZ{f(x.wire)}; }
    Instruction operator()(MeasureX x) const { return MeasureX{f(x.wire)}; }
    Instruction operator()(PostSelectZero p) const {
      for (int& w : p.wires) w = f(w);
      return p;
    }
    Instruction operator()(Reset r) const { return Reset{f(r.wire)}; }
  };
  return std::visit(Visitor{m}, inst);
}

}  // namespace

Circuit& Circuit::append(const Circuit& sub, std::span<const int> wire_map) {
  if (wire_map.size() != static_cast<std::size_t>(sub.n_qubits())) {
    throw std::invalid_argument("wire map size must equal the sub-circuit width");
  }
  for (const auto& inst : sub.instructions()) add(remap(inst, wire_map));
  for (int a : sub.ancilla()) mark_ancilla(wire_map[a]);
  return *this;
}

Circuit& Circuit::append(const Circuit& sub) {
  if (sub.n_qubits() > n_qubits_) {
    throw std::invalid_argument("appended circuit is wider than the host");
  }
  std::vector<int> ident(sub.n_qubits());
  for (int i = 0; i < sub.n_qubits(); ++i) ident[i] = i;
  return append(sub, ident);
}

bool Circuit::is_unitary() const {
  return std::all_of(instructions_.begin(), instructions_.end(), is_gate);
}

Circuit compose(const Circuit& a, const Circuit& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("compose: wire-count mismatch");
  }
  Circuit out = a;
  out.append(b);
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit out(c.n_qubits());
  for (int a : c.ancilla()) out.mark_ancilla(a);
  const auto& insts = c.instructions();
  for (auto it = insts.rbegin(); it != insts.rend(); ++it) {
    const auto* g = std::get_if<Gate>(&*it);
    if (!g) throw std::invalid_argument("inverse: circuit contains a non-unitary instruction");
    out.add(g->inverse());
  }
  return out;
}

}  // namespace midselect
