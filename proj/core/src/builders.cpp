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

#include "midselect/builders.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "midselect/linalg.hpp"

namespace midselect {

namespace {

struct Term {
  std::vector<int> wires;
  std::vector<bool> polarity;
};

/// Places `sub` so its first data_map.size() wires land on data_map; its
/// remaining wires become fresh ancillas of `outer`.
void append_on(Circuit& outer, const Circuit& sub, const std::vector<int>& data_map) {
  std::vector<int> map = data_map;
  for (int w = static_cast<int>(data_map.size()); w < sub.n_qubits(); ++w) {
    map.push_back(outer.add_qubits(1, true));
  }
  outer.append(sub, map);
}

double block_angle(int j) { return kPi / static_cast<double>(std::uint64_t{1} << (j - 1)); }

/// u_j removes the contribution of the already verified low bits of κ.
Mat2 block_correction(std::uint64_t kappa, int j) {
  const std::uint64_t low = kappa & ((std::uint64_t{1} << (j - 1)) - 1);
  return mat2::phase(-static_cast<double>(low) * block_angle(j));
}

void phase_term(Circuit& c, const Term& t, int ancilla, double phi) {
  c.add(Gate::controlled_phase(t.wires, ancilla, phi, t.polarity));
}

/// Readout of block j: X-basis measurement must match bit j of κ.
void close_block(Circuit& c, std::uint64_t kappa, int j, int a) {
  if (j > 1) c.add(Gate::u1q(block_correction(kappa, j), a));
  c.add(Gate::u1q(mat2::h(), a));
  if ((kappa >> (j - 1)) & 1) c.add(Gate::u1q(mat2::x(), a));
}

void sum_filter_single(Circuit& c, const std::vector<Term>& terms, std::uint64_t kappa, int blocks,
                       int a) {
  for (int j = 1; j <= blocks; ++j) {
    c.add(Gate::u1q(mat2::h(), a));
    for (const auto& t : terms) phase_term(c, t, a, block_angle(j));
    close_block(c, kappa, j, a);
    c.add(PostSelectZero{{a}});
    c.add(Reset{a});
  }
}

void sum_filter_log(Circuit& c, const std::vector<Term>& terms, std::uint64_t kappa, int blocks,
                    const std::vector<int>& anc) {
  for (int a : anc) c.add(Gate::u1q(mat2::h(), a));
  const int n_terms = static_cast<int>(terms.size());
  // Term g feeds ancilla j at step g + j - 1 so that no wire is used twice per step.
  for (int step = 0; step < n_terms + blocks - 1; ++step) {
    for (int j = 1; j <= blocks; ++j) {
      const int g = step - (j - 1);
      if (g >= 0 && g < n_terms) phase_term(c, terms[g], anc[j - 1], block_angle(j));
    }
  }
  for (int j = 1; j <= blocks; ++j) close_block(c, kappa, j, anc[j - 1]);
  c.add(PostSelectZero{anc});
}

void compress_level(Circuit& c, std::vector<int> wires, Compression& out) {
  if (wires.size() == 1) {
    // The last flag is 1 for every valid input.
    c.add(Gate::u1q(mat2::x(), wires[0]));
    out.zeroed.push_back(wires[0]);
    return;
  }
  const int low = wires[1];
  out.outputs.push_back(low);
  const std::size_t pairs = wires.size() / 2;
  std::vector<int> flags;
  for (std::size_t i = 0; i < pairs; ++i) {
    c.add(Gate::cnot(wires[2 * i + 1], wires[2 * i]));
    flags.push_back(wires[2 * i]);
  }
  if (wires.size() % 2) flags.push_back(wires.back());
  for (std::size_t i = 1; i < pairs; ++i) {
    const int flag = wires[2 * i], bit = wires[2 * i + 1];
    c.add(Gate::cnot(bit, low));
    c.add(Gate::toffoli(low, flag, bit));
    out.zeroed.push_back(bit);
  }
  compress_level(c, std::move(flags), out);
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

std::string_view to_string(KHotVariant v) {
  return v == KHotVariant::SingleAncilla ? "single_ancilla" : "log_ancilla";
}
std::string_view to_string(WallVariant v) { return v == WallVariant::Parallel ? "parallel" : "inductive"; }
std::string_view to_string(MixedVariant v) {
  switch (v) {
    case MixedVariant::CountSigma1: return "count_sigma1";
    case MixedVariant::CountSigLog: return "count_siglog";
    case MixedVariant::StoreOneHot: return "store_onehot";
  }
  return "?";
}

KHotVariant parse_khot_variant(std::string_view s) {
  if (s == "single_ancilla" || s == "single" || s == "sigma1") return KHotVariant::SingleAncilla;
  if (s == "log_ancilla" || s == "log" || s == "siglog") return KHotVariant::LogAncilla;
  throw std::invalid_argument("unknown k-hot variant '" + std::string(s) + "'");
}

WallVariant parse_wall_variant(std::string_view s) {
  if (s == "parallel") return WallVariant::Parallel;
  if (s == "inductive") return WallVariant::Inductive;
  throw std::invalid_argument("unknown domain-wall variant '" + std::string(s) + "'");
}

MixedVariant parse_mixed_variant(std::string_view s) {
  if (s == "count_sigma1" || s == "sigma1") return MixedVariant::CountSigma1;
  if (s == "count_siglog" || s == "siglog") return MixedVariant::CountSigLog;
  if (s == "store_onehot" || s == "store") return MixedVariant::StoreOneHot;
  throw std::invalid_argument("unknown mixed variant '" + std::string(s) + "'");
}

int sum_blocks(int n) { return static_cast<int>(std::bit_width(static_cast<unsigned>(n))); }

Circuit khot_filter(int n, int k, KHotVariant variant) {
  require(n >= 1, "k-hot filter needs n >= 1");
  require(k >= 1 && k <= n, "k must satisfy 1 <= k <= n");
  Circuit c(n);
  std::vector<Term> terms;
  for (int w = 0; w < n; ++w) terms.push_back({{w}, {true}});
  const int blocks = sum_blocks(n);
  if (variant == KHotVariant::SingleAncilla) {
    const int a = c.add_qubits(1, true);
    sum_filter_single(c, terms, static_cast<std::uint64_t>(k), blocks, a);
  } else {
    const int first = c.add_qubits(blocks, true);
    std::vector<int> anc;
    for (int j = 0; j < blocks; ++j) anc.push_back(first + j);
    sum_filter_log(c, terms, static_cast<std::uint64_t>(k), blocks, anc);
  }
  return c;
}

Circuit khot_block(int n, int k, int j) {
  require(k >= 1 && k <= n, "k must satisfy 1 <= k <= n");
  require(j >= 1 && j <= sum_blocks(n), "block index out of range");
  Circuit c(n);
  const int a = c.add_qubits(1, true);
  c.add(Gate::u1q(mat2::h(), a));
  for (int w = 0; w < n; ++w) phase_term(c, {{w}, {true}}, a, block_angle(j));
  close_block(c, static_cast<std::uint64_t>(k), j, a);
  c.add(PostSelectZero{{a}});
  c.add(Reset{a});
  return c;
}

Compression onehot_compression(int n) {
  require(n >= 2, "one-hot compression needs n >= 2");
  Compression out;
  out.circuit = Circuit(n);
  std::vector<int> wires(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) wires[i] = i;
  compress_level(out.circuit, wires, out);
  return out;
}

Circuit onehot_compress(int n) { return onehot_compression(n).circuit; }

Circuit onehot_postselect(int n, bool bound_check) {
  const Compression v = onehot_compression(n);
  Circuit c(n);
  c.append(v.circuit);
  c.add(PostSelectZero{v.zeroed});
  if (bound_check && !is_power_of_two(n)) {
    const int a = c.add_qubits(1, true);
    append_bound_check(c, v.outputs, static_cast<std::uint64_t>(n - 1), a);
  }
  Circuit undo = inverse(v.circuit);
  std::vector<int> map(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) map[i] = i;
  c.append(undo, map);
  return c;
}

Circuit domainwall_filter(int n, WallVariant variant) {
  require(n >= 2, "domain-wall filter needs n >= 2");
  Circuit c(n);
  if (variant == WallVariant::Parallel) {
    const int first = c.add_qubits(n - 1, true);
    std::vector<int> flags;
    // Even pairs then odd pairs keep the depth independent of n.
    for (int parity = 0; parity < 2; ++parity) {
      for (int i = parity; i + 1 < n; i += 2) {
        c.add(Gate::mcx({i, i + 1}, first + i, {false, true}));
      }
    }
    for (int i = 0; i + 1 < n; ++i) flags.push_back(first + i);
    c.add(PostSelectZero{flags});
  } else {
    const int a = c.add_qubits(1, true);
    for (int i = 0; i + 1 < n; ++i) {
      c.add(Gate::mcx({i, i + 1}, a, {false, true}));
      c.add(PostSelectZero{{a}});
      c.add(Reset{a});
    }
  }
  return c;
}

Circuit domainwall_compress_postselect(int n) {
  const Circuit conv = wall_to_onehot(n);
  Circuit c(n);
  c.append(conv);
  std::vector<int> data(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) data[i] = i;
  append_on(c, onehot_postselect(n, true), data);
  c.append(inverse(conv), data);
  return c;
}

Circuit wall_to_onehot(int n) {
  require(n >= 2, "conversion needs n >= 2");
  Circuit c(n);
  for (int i = 1; i < n; ++i) c.add(Gate::cnot(i, i - 1));
  return c;
}

Circuit gray_to_binary(int n) {
  require(n >= 1, "conversion needs n >= 1");
  Circuit c(n);
  for (int i = n - 1; i >= 1; --i) c.add(Gate::cnot(i, i - 1));
  return c;
}

std::vector<std::string> binary_bound_patterns(int n, std::uint64_t mu) {
  require(n >= 1 && n <= 62, "register width must lie in 1..62");
  require(mu < (std::uint64_t{1} << n), "mu must be below 2^n");
  std::vector<std::string> out;
  for (int i = n - 1; i >= 0; --i) {
    if ((mu >> i) & 1) continue;
    std::string p(static_cast<std::size_t>(n), '.');
    for (int j = n - 1; j > i; --j) p[static_cast<std::size_t>(n - 1 - j)] = ((mu >> j) & 1) ? '1' : '0';
    p[static_cast<std::size_t>(n - 1 - i)] = '1';
    out.push_back(std::move(p));
  }
  return out;
}

void append_bound_check(Circuit& c, const std::vector<int>& bits, std::uint64_t mu, int ancilla,
                        int partial_checks) {
  const int n = static_cast<int>(bits.size());
  require(n >= 1 && n <= 62, "bound check width must lie in 1..62");
  require(mu < (std::uint64_t{1} << n), "mu must be below 2^n");
  require(partial_checks >= 0, "partial check count must be non-negative");
  int done = 0;
  for (int i = n - 1; i >= 0; --i) {
    if ((mu >> i) & 1) continue;
    if (partial_checks > 0 && done == partial_checks) break;
    std::vector<int> ctrls;
    std::vector<bool> pol;
    for (int j = n - 1; j > i; --j) {
      ctrls.push_back(bits[j]);
      pol.push_back(((mu >> j) & 1) != 0);
    }
    ctrls.push_back(bits[i]);
    pol.push_back(true);
    c.add(Gate::mcx(std::move(ctrls), ancilla, std::move(pol)));
    c.add(PostSelectZero{{ancilla}});
    c.add(Reset{ancilla});
    ++done;
  }
}

Circuit binary_bound_filter(int n, std::uint64_t mu, int partial_checks) {
  require(n >= 1 && n <= 62, "register width must lie in 1..62");
  require(mu < (std::uint64_t{1} << n), "mu must be below 2^n");
  Circuit c(n);
  if (mu == (std::uint64_t{1} << n) - 1) return c;
  const int a = c.add_qubits(1, true);
  std::vector<int> bits(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) bits[i] = i;
  append_bound_check(c, bits, mu, a, partial_checks);
  return c;
}

Circuit gray_bound_filter(int n, std::uint64_t mu, int partial_checks) {
  const Circuit conv = gray_to_binary(n);
  Circuit c(n);
  c.append(conv);
  std::vector<int> data(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) data[i] = i;
  append_on(c, binary_bound_filter(n, mu, partial_checks), data);
  c.append(inverse(conv), data);
  return c;
}

Circuit multi_register_bound_filter(int registers, int width, std::uint64_t mu, int partial_checks) {
  require(registers >= 1 && width >= 1, "need at least one register of width >= 1");
  require(mu < (std::uint64_t{1} << width), "mu must be below 2^width");
  Circuit c(registers * width);
  if (mu == (std::uint64_t{1} << width) - 1) return c;
  const int a = c.add_qubits(1, true);
  for (int r = 0; r < registers; ++r) {
    std::vector<int> bits;
    for (int i = 0; i < width; ++i) bits.push_back(r * width + i);
    append_bound_check(c, bits, mu, a, partial_checks);
  }
  return c;
}

Circuit mixed_filter(int l, int m, MixedVariant variant, std::optional<std::uint64_t> mu_last) {
  require(l >= 1 && m >= 1, "mixed filter needs l, m >= 1");
  if (mu_last) require(*mu_last < (std::uint64_t{1} << m), "last-group bound must be below 2^m");
  const int n = l * m;
  Circuit c(n);
  std::vector<Term> zero_groups;  // fires when the group is all zero
  for (int g = 0; g < l; ++g) {
    Term t;
    for (int i = 0; i < m; ++i) {
      t.wires.push_back(g * m + i);
      t.polarity.push_back(false);
    }
    zero_groups.push_back(std::move(t));
  }
  const auto kappa = static_cast<std::uint64_t>(l - 1);
  const int blocks = sum_blocks(l);
  switch (variant) {
    case MixedVariant::CountSigma1: {
      const int a = c.add_qubits(1, true);
      sum_filter_single(c, zero_groups, kappa, blocks, a);
      break;
    }
    case MixedVariant::CountSigLog: {
      const int first = c.add_qubits(blocks, true);
      std::vector<int> anc;
      for (int j = 0; j < blocks; ++j) anc.push_back(first + j);
      sum_filter_log(c, zero_groups, kappa, blocks, anc);
      break;
    }
    case MixedVariant::StoreOneHot: {
      const int first = c.add_qubits(l, true);
      std::vector<int> flags;
      for (int g = 0; g < l; ++g) flags.push_back(first + g);
      auto mark = [&] {
        for (int g = 0; g < l; ++g) {
          c.add(Gate::mcx(zero_groups[g].wires, flags[g], zero_groups[g].polarity));
        }
        for (int f : flags) c.add(Gate::u1q(mat2::x(), f));
      };
      // flag_g = 1 iff group g is nonzero; the flags must then be one-hot.
      mark();
      if (l == 1) {
        c.add(Gate::u1q(mat2::x(), flags[0]));
        c.add(PostSelectZero{{flags[0]}});
        c.add(Gate::u1q(mat2::x(), flags[0]));
      } else {
        append_on(c, onehot_postselect(l, true), flags);
      }
      // Uncompute the flags so accepted superpositions keep their coherence.
      for (int f : flags) c.add(Gate::u1q(mat2::x(), f));
      for (int g = 0; g < l; ++g) {
        c.add(Gate::mcx(zero_groups[g].wires, flags[g], zero_groups[g].polarity));
      }
      break;
    }
  }
  if (mu_last && *mu_last != (std::uint64_t{1} << m) - 1) {
    const int a = c.add_qubits(1, true);
    std::vector<int> bits;
    for (int i = 0; i < m; ++i) bits.push_back((l - 1) * m + i);
    append_bound_check(c, bits, *mu_last, a);
  }
  return c;
}

}  // namespace midselect
