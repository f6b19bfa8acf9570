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
#include <optional>

#include "midselect/circuit.hpp"

namespace midselect {

/// True when every instruction maps basis states to basis states: X-type and
/// diagonal single-qubit gates, (multi-)controlled X, SWAP, controlled phases,
/// Z measurements, post-selections and resets.
bool is_classical(const Circuit& c);

/// Runs a classical circuit on one basis state. Returns the final basis state,
/// or nullopt when a post-selection rejects it. Phases are dropped.
std::optional<std::uint64_t> classical_run(const Circuit& c, std::uint64_t basis);

/// Acceptance of the maximally mixed state on the data wires with ancillas in |0>,
/// i.e. the fraction of data basis states that survive. Handles up to 30 data wires.
double classical_uniform_acceptance(const Circuit& c);

}  // namespace midselect
