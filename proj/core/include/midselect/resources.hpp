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

#include "midselect/circuit.hpp"

namespace midselect {

struct ResourceProfile {
  std::size_t ancilla = 0;
  std::size_t gates = 0;
  std::size_t depth = 0;
  /// depth × total qubits
  std::size_t volume = 0;
};

/// Counts a transpiled circuit. Depth uses earliest-slot scheduling where two
/// instructions conflict iff they share a wire; measurements, post-selections
/// and resets occupy a slot but are not counted as gates.
ResourceProfile resources(const Circuit& c);

/// Length of the longest chain of instructions acting on a single wire.
std::size_t longest_wire_chain(const Circuit& c);

}  // namespace midselect
