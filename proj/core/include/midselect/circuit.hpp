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

#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "midselect/linalg.hpp"

namespace midselect {

enum class GateKind {
  U1q,              // arbitrary 2x2 unitary on one wire
  CNOT,             // one control (closed or open), one target
  SWAP,
  MCX,              // multi-controlled X with per-control polarity
  ControlledPhase,  // diag(1, e^{iφ}) on the target, multi-controlled
  XXPlusYY,         // exp(-i θ (XX + YY)) on a wire pair
  Barrier,
};

std::string_view to_string(GateKind kind);

/// A unitary gate. Controls come first in `wires`, the target(s) last.
/// `polarity[i]` is true for a closed (|1>) control and false for an open one.
struct Gate {
  GateKind kind = GateKind::Barrier;
  std::vector<int> wires;
  std::vector<bool> polarity;
  double angle = 0.0;
  Mat2 matrix = Mat2::Identity();

  static Gate u1q(const Mat2& m, int wire);
  static Gate cnot(int control, int target, bool closed = true);
  static Gate swap(int a, int b);
  static Gate mcx(std::vector<int> controls, int target, std::vector<bool> polarity = {});
  static Gate toffoli(int c0, int c1, int target) { return mcx({c0, c1}, target); }
  static Gate controlled_phase(std::vector<int> controls, int target, double phi,
                               std::vector<bool> polarity = {});
  static Gate xx_plus_yy(int a, int b, double theta);
  static Gate barrier(std::vector<int> wires);

  std::size_t control_count() const { return polarity.size(); }
  std::span<const int> controls() const {
    return std::span<const int>(wires).first(polarity.size());
  }
  int target() const { return wires.back(); }

  Gate inverse() const;
};

struct MeasureZ {
  int wire = 0;
};
/// X-basis readout; lowered to H followed by MeasureZ.
struct MeasureX {
  int wire = 0;
};
/// Projects the listed wires onto |0...0> and tracks the acceptance probability.
struct PostSelectZero {
  std::vector<int> wires;
};
/// Measure-and-discard followed by re-preparation of |0>.
struct Reset {
  int wire = 0;
};

using Instruction = std::variant<Gate, MeasureZ, MeasureX, PostSelectZero, Reset>;

std::vector<int> wires_of(const Instruction& inst);
bool is_gate(const Instruction& inst);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Instruction>& instructions() const { return instructions_; }
  std::size_t size() const { return instructions_.size(); }
  bool empty() const { return instructions_.empty(); }

  /// Sorted list of wires designated as ancilla.
  const std::vector<int>& ancilla() const { return ancilla_; }
  std::vector<int> data_wires() const;
  bool is_ancilla(int wire) const;

  /// Appends `count` wires and returns the index of the first one.
  int add_qubits(int count, bool as_ancilla);
  void mark_ancilla(int wire);

  Circuit& add(Instruction inst);
  Circuit& add(std::span<const Instruction> insts);

  /// Appends `sub` with its wire i placed on `wire_map[i]`. Ancilla markings carry over.
  Circuit& append(const Circuit& sub, std::span<const int> wire_map);
  Circuit& append(const Circuit& sub);

  /// True when the circuit has no measurement, post-selection or reset.
  bool is_unitary() const;

 private:
  void check_wires(const Instruction& inst) const;

  int n_qubits_ = 0;
  std::vector<Instruction> instructions_;
  std::vector<int> ancilla_;
};

/// Instructions of `a` followed by `b`; ancilla sets are unioned.
Circuit compose(const Circuit& a, const Circuit& b);

/// Reversed instruction order with every gate inverted. Throws on non-unitary instructions.
Circuit inverse(const Circuit& c);

}  // namespace midselect
