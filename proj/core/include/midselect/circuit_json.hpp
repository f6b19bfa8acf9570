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

#include <filesystem>
#include <string>
#include <string_view>

#include "midselect/circuit.hpp"

namespace midselect {

// Interchange format:
//   {"n_qubits": N, "ancilla": [..],
//    "instructions": [{"op": ..., "wires": [..], "polarity"?: [..], "angle"?: x,
//                      "matrix"?: [[re, im] x4 row-major]}]}
// op is one of u1q, cnot, swap, mcx, cphase, xxpyy, barrier, measure_z,
// measure_x, postselect_zero, reset.

std::string circuit_to_json(const Circuit& c, int indent = -1);
Circuit circuit_from_json(std::string_view text);

void write_circuit(const Circuit& c, const std::filesystem::path& path);
Circuit read_circuit(const std::filesystem::path& path);

}  // namespace midselect
