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

#include "midselect/circuit.hpp"
#include "midselect/linalg.hpp"

namespace midselect {

/// Pure-state simulator for noiseless runs. Understands every gate kind natively,
/// which makes it the reference semantics for the transpiler.
///
/// Post-selection keeps the projected branch renormalized and multiplies the
/// acceptance probability. Resets and measurements are supported only when their
/// outcome is deterministic; anything else needs the density simulator.
class StateVector {
 public:
  explicit StateVector(int n_qubits, std::uint64_t basis_index = 0);
  StateVector(int n_qubits, VecX amplitudes);

  int n_qubits() const { return n_; }
  const VecX& amplitudes() const { return amps_; }
  double acceptance() const { return acceptance_; }
  bool rejected() const { return rejected_; }

  void apply(const Gate& g);
  void apply(const Instruction& inst);
  void run(const Circuit& c);

  /// Projects `wires` onto |0>; returns the branch probability.
  double postselect_zero(std::span<const int> wires);
  void reset(int wire);

  /// Probability that `wire` reads 1.
  double probability_one(int wire) const;

 private:
  void check_wire(int w) const;

  int n_;
  VecX amps_;
  double acceptance_ = 1.0;
  bool rejected_ = false;
};

inline constexpr double kRejectThreshold = 1e-14;

/// Full unitary of a measurement-free circuit (column j = image of basis state j).
MatX circuit_unitary(const Circuit& c);

/// Simulates `c` from a basis state and returns the final acceptance probability.
double basis_acceptance(const Circuit& c, std::uint64_t basis_index);

}  // namespace midselect
