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

namespace midselect {

enum class EncodingKind { KHot, OneHot, DomainWall, BinaryBound, GrayBound, Mixed };

std::string_view to_string(EncodingKind k);
/// khot | onehot | wall | binary | gray | mixed
EncodingKind parse_encoding_kind(std::string_view name);

/// Which basis states of an n-bit data register are valid. Bit i of a basis
/// index is wire i (wire 0 least significant).
struct EncodingSpec {
  EncodingKind kind = EncodingKind::OneHot;
  int n = 0;
  int k = 1;              // k-hot weight
  std::uint64_t mu = 0;   // binary/Gray upper bound (inclusive)
  int l = 0;              // mixed: group count
  int m = 0;              // mixed: bits per group
  std::optional<std::uint64_t> mu_last;  // mixed: bound on the last group's value

  static EncodingSpec k_hot(int n, int k);
  static EncodingSpec one_hot(int n);
  static EncodingSpec domain_wall(int n);
  static EncodingSpec binary_bound(int n, std::uint64_t mu);
  static EncodingSpec gray_bound(int n, std::uint64_t mu);
  static EncodingSpec mixed(int l, int m, std::optional<std::uint64_t> mu_last = std::nullopt);

  /// Throws std::invalid_argument when the parameters are inconsistent.
  void validate() const;
};

class ValidityOracle {
 public:
  explicit ValidityOracle(EncodingSpec spec);

  const EncodingSpec& spec() const { return spec_; }
  bool operator()(std::uint64_t s) const { return valid(s); }
  bool valid(std::uint64_t s) const;
  /// Number of valid states among all 2^n.
  std::uint64_t count() const;

 private:
  EncodingSpec spec_;
};

/// b_j = XOR of g_i for i >= j.
std::uint64_t gray_to_binary_value(std::uint64_t g);
std::uint64_t binary_to_gray_value(std::uint64_t b);

/// Value held by group `group` (0-based) of a mixed register.
std::uint64_t mixed_group_value(std::uint64_t s, int group, int m);
/// (l̄ - 1)(2^m - 1) + x - 1 where l̄ is the 1-based index of the single nonzero
/// group and x its value. Throws when the state is not valid for the layout.
std::uint64_t decode_mixed(std::uint64_t s, int l, int m);

/// Bitstring with wire n-1 first, as used in printed patterns and messages.
std::string to_bitstring(std::uint64_t s, int n);

}  // namespace midselect
