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
#include <string>
#include <string_view>
#include <vector>

#include "midselect/circuit.hpp"

namespace midselect {

// Every builder places the data register on wires 0..n-1 and appends its
// ancillas after it. Circuits are returned untranspiled.

enum class KHotVariant { SingleAncilla, LogAncilla };
enum class WallVariant { Parallel, Inductive };
enum class MixedVariant { CountSigma1, CountSigLog, StoreOneHot };

std::string_view to_string(KHotVariant v);
std::string_view to_string(WallVariant v);
std::string_view to_string(MixedVariant v);
KHotVariant parse_khot_variant(std::string_view s);
WallVariant parse_wall_variant(std::string_view s);
MixedVariant parse_mixed_variant(std::string_view s);

/// ⌈log2(n+1)⌉: bits needed to hold a sum of n ones.
int sum_blocks(int n);

/// Accepts exactly the basis states of Hamming weight k.
Circuit khot_filter(int n, int k, KHotVariant variant = KHotVariant::SingleAncilla);

/// Block j (1-based) of the single-ancilla verifier on n data wires + 1 ancilla.
Circuit khot_block(int n, int k, int j);

struct Compression {
  Circuit circuit;
  /// outputs[b] holds bit b of the one-hot position.
  std::vector<int> outputs;
  /// Wires that read |0> for every valid input.
  std::vector<int> zeroed;
};

/// One-hot → binary on n wires, no ancilla.
Compression onehot_compression(int n);
Circuit onehot_compress(int n);

/// V, PostSelectZero on the zeroed wires, then V†. With `bound_check` and n not a
/// power of two, the compressed value is also checked against n-1 on one ancilla.
Circuit onehot_postselect(int n, bool bound_check = true);

Circuit domainwall_filter(int n, WallVariant variant = WallVariant::Parallel);

/// Domain wall → one-hot → compression post-selection → back. The all-zero wall
/// has no one-hot image and is rejected by this path.
Circuit domainwall_compress_postselect(int n);

/// CNOT(i → i-1) for i = 1..n-1 in increasing order: wall of w ones becomes one-hot at w-1.
Circuit wall_to_onehot(int n);
/// CNOT(i → i-1) for i = n-1..1: b_j = XOR_{i>=j} g_i.
Circuit gray_to_binary(int n);

/// Check patterns for value <= mu, most significant first, printed with wire n-1
/// on the left and '.' for free bits.
std::vector<std::string> binary_bound_patterns(int n, std::uint64_t mu);

/// Accepts basis value v iff v <= mu. `partial_checks > 0` keeps only that many
/// checks, starting from the most significant zero bit of mu.
Circuit binary_bound_filter(int n, std::uint64_t mu, int partial_checks = 0);

/// Gray code → binary, bound filter, and back.
Circuit gray_bound_filter(int n, std::uint64_t mu, int partial_checks = 0);

/// `registers` binary registers of `width` bits each, every one checked against
/// mu on a shared ancilla.
Circuit multi_register_bound_filter(int registers, int width, std::uint64_t mu,
                                    int partial_checks = 0);

/// Accepts basis states where exactly one of the l groups of m bits is nonzero
/// (and, with mu_last, the last group's value is at most mu_last).
Circuit mixed_filter(int l, int m, MixedVariant variant,
                     std::optional<std::uint64_t> mu_last = std::nullopt);

/// Appends the bound checks for `bits` (bits[i] = bit i) against mu using `ancilla`.
void append_bound_check(Circuit& c, const std::vector<int>& bits, std::uint64_t mu, int ancilla,
                        int partial_checks = 0);

}  // namespace midselect
