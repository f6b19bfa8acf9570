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

#include "midselect/classical.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace midselect {

namespace {

enum class OpKind { Flip, Swap, Reject, Clear };

struct Op {
  OpKind kind;
  std::uint64_t closed = 0;  // controls that must read 1
  std::uint64_t open = 0;    // controls that must read 0
  std::uint64_t target = 0;  // Flip/Reject/Clear mask, or the first Swap wire
  std::uint64_t other = 0;   // second Swap wire
};

bool is_x_like(const Mat2& m) {
  return std::abs(m(0, 0)) < 1e-12 && std::abs(m(1, 1)) < 1e-12;
}
bool is_diagonal(const Mat2& m) {
  return std::abs(m(0, 1)) < 1e-12 && std::abs(m(1, 0)) < 1e-12;
}

std::uint64_t bit(int w) { return std::uint64_t{1} << w; }

/// Returns false when the instruction is not classical.
bool compile(const Instruction& inst, std::vector<Op>& ops) {
  if (const auto* g = std::get_if<Gate>(&inst)) {
    switch (g->kind) {
      case GateKind::Barrier:
      case GateKind::ControlledPhase: return true;
      case GateKind::U1q:
        if (is_diagonal(g->matrix)) return true;
        if (is_x_like(g->matrix)) {
          ops.push_back({OpKind::Flip, 0, 0, bit(g->wires[0]), 0});
          return true;
        }
        return false;
      case GateKind::CNOT:
      case GateKind::MCX: {
        Op op{OpKind::Flip, 0, 0, bit(g->target()), 0};
        const auto ctrls = g->controls();
        for (std::size_t i = 0; i < ctrls.size(); ++i) {
          (g->polarity[i] ? op.closed : op.open) |= bit(ctrls[i]);
        }
        ops.push_back(op);
        return true;
      }
      case GateKind::SWAP:
        ops.push_back({OpKind::Swap, 0, 0, bit(g->wires[0]), bit(g->wires[1])});
        return true;
      case GateKind::XXPlusYY: return false;
    }
    return false;
  }
  if (std::holds_alternative<MeasureZ>(inst)) return true;
  if (std::holds_alternative<MeasureX>(inst)) return false;
  if (const auto* p = std::get_if<PostSelectZero>(&inst)) {
    Op op{OpKind::Reject, 0, 0, 0, 0};
    for (int w : p->wires) op.target |= bit(w);
    ops.push_back(op);
    return true;
  }
  if (const auto* r = std::get_if<Reset>(&inst)) {
    ops.push_back({OpKind::Clear, 0, 0, bit(r->wire), 0});
    return true;
  }
  return false;
}

std::vector<Op> compile_all(const Circuit& c) {
  if (c.n_qubits() > 63) throw std::invalid_argument("classical simulation supports at most 63 wires");
  std::vector<Op> ops;
  for (const auto& inst : c.instructions()) {
    if (!compile(inst, ops)) throw std::invalid_argument("circuit is not classical");
  }
  return ops;
}

std::optional<std::uint64_t> execute(const std::vector<Op>& ops, std::uint64_t s) {
  for (const auto& op : ops) {
    switch (op.kind) {
      case OpKind::Flip:
        if ((s & op.closed) == op.closed && (s & op.open) == 0) s ^= op.target;
        break;
      case OpKind::Swap:
        if (((s & op.target) != 0) != ((s & op.other) != 0)) s ^= op.target | op.other;
        break;
      case OpKind::Reject:
        if (s & op.target) return std::nullopt;
        break;
      case OpKind::Clear: s &= ~op.target; break;
    }
  }
  return s;
}

}  // namespace

bool is_classical(const Circuit& c) {
  std::vector<Op> ops;
  for (const auto& inst : c.instructions()) {
    if (!compile(inst, ops)) return false;
  }
  return true;
}

std::optional<std::uint64_t> classical_run(const Circuit& c, std::uint64_t basis) {
  return execute(compile_all(c), basis);
}

double classical_uniform_acceptance(const Circuit& c) {
  const auto ops = compile_all(c);
  const auto data = c.data_wires();
  if (data.size() > 30) throw std::invalid_argument("classical sweep supports at most 30 data wires");
  const std::uint64_t total = std::uint64_t{1} << data.size();
  std::uint64_t accepted = 0;
  for (std::uint64_t v = 0; v < total; ++v) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      if ((v >> i) & 1) s |= bit(data[i]);
    }
    if (execute(ops, s)) ++accepted;
  }
  return static_cast<double>(accepted) / static_cast<double>(total);
}

}  // namespace midselect
