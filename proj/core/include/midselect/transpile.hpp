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

#include <string_view>

#include "midselect/circuit.hpp"

namespace midselect {

/// How multi-controlled X gates with three or more controls are lowered.
///
/// `AncillaFree` never adds wires. It borrows an idle wire in whatever state it
/// is in (restored exactly afterwards) and falls back to the quadratic-size
/// recursive construction when every wire is already in use.
///
/// `BorrowedAncilla` computes the conjunction of the controls in a balanced
/// Toffoli tree on clean |0> wires appended to the circuit. Wires are pooled and
/// reused; the pool only grows when the busy wires would serialize the tree.
enum class McxStrategy { AncillaFree, BorrowedAncilla };

std::string_view to_string(McxStrategy s);
McxStrategy parse_mcx_strategy(std::string_view name);

struct TranspileOptions {
  McxStrategy mcx = McxStrategy::AncillaFree;
  /// Fuse runs of single-qubit gates on the same wire into one U1q.
  bool merge_single_qubit = true;
};

/// Lowers `c` to {U1q, CNOT, MeasureZ, PostSelectZero, Reset}. Global phase is not preserved.
Circuit transpile(const Circuit& c, const TranspileOptions& opts = {});
Circuit transpile(const Circuit& c, McxStrategy strategy);

bool is_transpiled(const Circuit& c);

}  // namespace midselect
