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

#include "midselect/resources.hpp"

#include <algorithm>
#include <vector>

namespace midselect {

ResourceProfile resources(const Circuit& c) {
  ResourceProfile r;
  r.ancilla = c.ancilla().size();
  std::vector<std::size_t> slot(static_cast<std::size_t>(c.n_qubits()), 0);
  for (const auto& inst : c.instructions()) {
    const auto* g = std::get_if<Gate>(&inst);
    if (g && g->kind == GateKind::Barrier) continue;
    if (g) ++r.gates;
    const auto wires = wires_of(inst);
    std::size_t s = 0;
    for (int w : wires) s = std::max(s, slot[w]);
    for (int w : wires) slot[w] = s + 1;
    r.depth = std::max(r.depth, s + 1);
  }
  r.volume = r.depth * static_cast<std::size_t>(c.n_qubits());
  return r;
}

std::size_t longest_wire_chain(const Circuit& c) {
  std::vector<std::size_t> count(static_cast<std::size_t>(c.n_qubits()), 0);
  for (const auto& inst : c.instructions()) {
    if (const auto* g = std::get_if<Gate>(&inst); g && g->kind == GateKind::Barrier) continue;
    for (int w : wires_of(inst)) ++count[w];
  }
  return count.empty() ? 0 : *std::max_element(count.begin(), count.end());
}

}  // namespace midselect
