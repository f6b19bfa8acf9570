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

#include "midselect/encodings.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace midselect {

std::string_view to_string(EncodingKind k) {
  switch (k) {
    case EncodingKind::KHot: return "khot";
    case EncodingKind::OneHot: return "onehot";
    case EncodingKind::DomainWall: return "wall";
    case EncodingKind::BinaryBound: return "binary";
    case EncodingKind::GrayBound: return "gray";
    case EncodingKind::Mixed: return "mixed";
  }
  return "?";
}

EncodingKind parse_encoding_kind(std::string_view name) {
  if (name == "khot" || name == "k_hot") return EncodingKind::KHot;
  if (name == "onehot" || name == "one_hot") return EncodingKind::OneHot;
  if (name == "wall" || name == "domain_wall" || name == "domainwall") return EncodingKind::DomainWall;
  if (name == "binary") return EncodingKind::BinaryBound;
  if (name == "gray") return EncodingKind::GrayBound;
  if (name == "mixed") return EncodingKind::Mixed;
  throw std::invalid_argument("unknown encoding '" + std::string(name) + "'");
}

EncodingSpec EncodingSpec::k_hot(int n, int k) {
  EncodingSpec s;
  s.kind = EncodingKind::KHot;
  s.n = n;
  s.k = k;
  s.validate();
  return s;
}

EncodingSpec EncodingSpec::one_hot(int n) {
  EncodingSpec s;
  s.kind = EncodingKind::OneHot;
  s.n = n;
  s.validate();
  return s;
}

EncodingSpec EncodingSpec::domain_wall(int n) {
  EncodingSpec s;
  s.kind = EncodingKind::DomainWall;
  s.n = n;
  s.validate();
  return s;
}

EncodingSpec EncodingSpec::binary_bound(int n, std::uint64_t mu) {
  EncodingSpec s;
  s.kind = EncodingKind::BinaryBound;
  s.n = n;
  s.mu = mu;
  s.validate();
  return s;
}

EncodingSpec EncodingSpec::gray_bound(int n, std::uint64_t mu) {
  EncodingSpec s = binary_bound(n, mu);
  s.kind = EncodingKind::GrayBound;
  return s;
}

EncodingSpec EncodingSpec::mixed(int l, int m, std::optional<std::uint64_t> mu_last) {
  EncodingSpec s;
  s.kind = EncodingKind::Mixed;
  s.l = l;
  s.m = m;
  s.n = l * m;
  s.mu_last = mu_last;
  s.validate();
  return s;
}

void EncodingSpec::validate() const {
  if (n < 1 || n > 62) throw std::invalid_argument("register width must lie in 1..62");
  switch (kind) {
    case EncodingKind::KHot:
      if (k < 1 || k > n) throw std::invalid_argument("k must satisfy 1 <= k <= n");
      break;
    case EncodingKind::OneHot:
    case EncodingKind::DomainWall: break;
    case EncodingKind::BinaryBound:
    case EncodingKind::GrayBound:
      if (mu >= (std::uint64_t{1} << n)) throw std::invalid_argument("mu must be below 2^n");
      break;
    case EncodingKind::Mixed:
      if (l < 1 || m < 1) throw std::invalid_argument("mixed encoding needs l, m >= 1");
      if (l * m != n) throw std::invalid_argument("mixed encoding needs l*m == n");
      if (mu_last && *mu_last >= (std::uint64_t{1} << m)) {
        throw std::invalid_argument("last-group bound must be below 2^m");
      }
      break;
  }
}

ValidityOracle::ValidityOracle(EncodingSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

bool ValidityOracle::valid(std::uint64_t s) const {
  const int n = spec_.n;
  if (s >> n) return false;
  switch (spec_.kind) {
    case EncodingKind::KHot: return std::popcount(s) == spec_.k;
    case EncodingKind::OneHot: return std::popcount(s) == 1;
    case EncodingKind::DomainWall:
      // Invalid iff some wire i reads 0 while wire i+1 reads 1.
      return ((~s) & (s >> 1) & ((std::uint64_t{1} << (n - 1)) - 1)) == 0;
    case EncodingKind::BinaryBound: return s <= spec_.mu;
    case EncodingKind::GrayBound: return gray_to_binary_value(s) <= spec_.mu;
    case EncodingKind::Mixed: {
      int nonzero = 0;
      for (int g = 0; g < spec_.l; ++g) {
        if (mixed_group_value(s, g, spec_.m) != 0) ++nonzero;
      }
      if (nonzero != 1) return false;
      if (spec_.mu_last && mixed_group_value(s, spec_.l - 1, spec_.m) > *spec_.mu_last) return false;
      return true;
    }
  }
  return false;
}

std::uint64_t ValidityOracle::count() const {
  std::uint64_t c = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << spec_.n); ++s) c += valid(s) ? 1 : 0;
  return c;
}

std::uint64_t gray_to_binary_value(std::uint64_t g) {
  std::uint64_t b = g;
  for (int shift = 1; shift < 64; shift <<= 1) b ^= b >> shift;
  return b;
}

std::uint64_t binary_to_gray_value(std::uint64_t b) { return b ^ (b >> 1); }

std::uint64_t mixed_group_value(std::uint64_t s, int group, int m) {
  return (s >> (group * m)) & ((std::uint64_t{1} << m) - 1);
}

std::uint64_t decode_mixed(std::uint64_t s, int l, int m) {
  int which = -1;
  for (int g = 0; g < l; ++g) {
    if (mixed_group_value(s, g, m) == 0) continue;
    if (which >= 0) throw std::invalid_argument("more than one nonzero group");
    which = g;
  }
  if (which < 0) throw std::invalid_argument("no nonzero group");
  const std::uint64_t x = mixed_group_value(s, which, m);
  return static_cast<std::uint64_t>(which) * ((std::uint64_t{1} << m) - 1) + x - 1;
}

std::string to_bitstring(std::uint64_t s, int n) {
  std::string out(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i) {
    if ((s >> i) & 1) out[static_cast<std::size_t>(n - 1 - i)] = '1';
  }
  return out;
}

}  // namespace midselect
