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

#include "midselect/qaoa.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "midselect/builders.hpp"
#include "midselect/linalg.hpp"

namespace midselect {

void AnsatzConfig::validate() const {
  if (registers < 1 || width < 1) throw std::invalid_argument("ansatz needs registers, width >= 1");
  if (layers < 0) throw std::invalid_argument("layer count must be non-negative");
  if (postselect_every < 0) throw std::invalid_argument("post-selection stride must be non-negative");
  if (mixer_steps < 1) throw std::invalid_argument("mixer needs at least one Trotter step");
  if (static_cast<int>(angles.size()) != 2 * layers) {
    throw std::invalid_argument("ansatz needs 2*layers angles, got " + std::to_string(angles.size()));
  }
  if (postselect_every > 0 && width < 2) {
    throw std::invalid_argument("compression post-selection needs register width >= 2");
  }
}

Circuit w_state_circuit(int width) {
  if (width < 1) throw std::invalid_argument("W state needs width >= 1");
  Circuit c(width);
  c.add(Gate::u1q(mat2::x(), 0));
  for (int i = 0; i + 1 < width; ++i) {
    // Keep weight 1/width on wire i and push the rest to wire i+1.
    const double theta = 2.0 * std::acos(1.0 / std::sqrt(static_cast<double>(width - i)));
    c.add(Gate::u1q(mat2::ry(theta / 2), i + 1));
    c.add(Gate::cnot(i, i + 1));
    c.add(Gate::u1q(mat2::ry(-theta / 2), i + 1));
    c.add(Gate::cnot(i, i + 1));
    c.add(Gate::cnot(i + 1, i));
  }
  return c;
}

std::vector<std::pair<int, int>> xy_mixer_pairs(int width) {
  if (width < 2) throw std::invalid_argument("XY mixer needs width >= 2");
  std::vector<std::pair<int, int>> out;
  for (int s = 1; s + 1 < width; s += 2) out.emplace_back(s, s + 1);
  for (int s = 0; s + 1 < width; s += 2) out.emplace_back(s, s + 1);
  if (width >= 3) out.emplace_back(width - 1, 0);
  return out;
}

Circuit xy_mixer_layer(int width, double angle, int steps) {
  if (steps < 1) throw std::invalid_argument("mixer needs at least one Trotter step");
  Circuit c(width);
  const auto pairs = xy_mixer_pairs(width);
  for (int s = 0; s < steps; ++s) {
    for (const auto& [a, b] : pairs) c.add(Gate::xx_plus_yy(a, b, angle / steps));
  }
  return c;
}

Circuit phase_separator(const QuboModel& q, double angle) {
  const IsingModel m = qubo_to_ising(q);
  Circuit c(q.n());
  // exp(-i p H) with H = -Σ J ZZ - Σ h Z, up to global phase.
  for (int i = 0; i < m.n(); ++i) {
    if (m.h(i) != 0.0) c.add(Gate::u1q(mat2::rz(-2.0 * angle * m.h(i)), i));
  }
  for (int i = 0; i < m.n(); ++i) {
    for (int k = i + 1; k < m.n(); ++k) {
      const double j = m.j(i, k);
      if (j == 0.0) continue;
      c.add(Gate::cnot(i, k));
      c.add(Gate::u1q(mat2::rz(-2.0 * angle * j), k));
      c.add(Gate::cnot(i, k));
    }
  }
  return c;
}

SubspaceSpec register_onehot_subspace(int n_qubits, int registers, int width) {
  if (registers * width > n_qubits) throw std::invalid_argument("registers exceed the wire count");
  const std::uint64_t reg_mask = (std::uint64_t{1} << width) - 1;
  const int data = registers * width;
  return SubspaceSpec::from_predicate(n_qubits, [=](std::uint64_t z) {
    if (z >> data) return false;
    for (int r = 0; r < registers; ++r) {
      if (std::popcount((z >> (r * width)) & reg_mask) != 1) return false;
    }
    return true;
  });
}

QaoaProblem make_problem(const TspInstance& inst) {
  inst.validate();
  if (inst.n < 3) throw std::invalid_argument("XY-QAOA on the reduced model needs N >= 3");
  const auto parts = reduced_tsp_qubo_parts(inst);
  QaoaProblem p;
  p.instance = inst;
  p.energy_qubo = parts.total();
  p.separator_qubo = parts.city_penalty;
  p.separator_qubo += parts.route;
  const auto spec = brute_spectrum(p.energy_qubo);
  p.e_min = spec.e_min;
  p.e_max = spec.e_max;
  p.registers = inst.n - 1;
  p.width = inst.n - 1;
  return p;
}

Circuit assemble(const AnsatzConfig& cfg, const QuboModel& separator) {
  cfg.validate();
  const int w = cfg.width;
  const int data = cfg.data_qubits();
  if (separator.n() != data) throw std::invalid_argument("separator QUBO does not match the layout");
  Circuit c(data);
  auto reg_map = [&](int r) {
    std::vector<int> m(static_cast<std::size_t>(w));
    for (int i = 0; i < w; ++i) m[i] = r * w + i;
    return m;
  };
  const Circuit w_prep = w_state_circuit(w);
  for (int r = 0; r < cfg.registers; ++r) c.append(w_prep, reg_map(r));

  std::optional<Circuit> ps;
  if (cfg.postselect_every > 0) ps = onehot_postselect(w, cfg.bound_check);
  std::vector<int> ps_ancilla;  // shared across registers and blocks; reset after each use

  for (int layer = 0; layer < cfg.layers; ++layer) {
    c.append(phase_separator(separator, cfg.angles[layer]));
    const Circuit mixer = xy_mixer_layer(w, cfg.angles[cfg.layers + layer], cfg.mixer_steps);
    for (int r = 0; r < cfg.registers; ++r) c.append(mixer, reg_map(r));
    if (ps && (layer + 1) % cfg.postselect_every == 0) {
      while (static_cast<int>(ps_ancilla.size()) < ps->n_qubits() - w) {
        ps_ancilla.push_back(c.add_qubits(1, true));
      }
      for (int r = 0; r < cfg.registers; ++r) {
        auto m = reg_map(r);
        m.insert(m.end(), ps_ancilla.begin(), ps_ancilla.end());
        c.append(*ps, m);
      }
    }
  }
  return c;
}

std::vector<double> energy_diagonal(const QuboModel& q, int n_qubits) {
  if (n_qubits < q.n()) throw std::invalid_argument("fewer wires than QUBO variables");
  const auto base = q.diagonal();
  if (n_qubits == q.n()) return base;
  std::vector<double> out(std::size_t{1} << n_qubits);
  const std::uint64_t mask = (std::uint64_t{1} << q.n()) - 1;
  for (std::uint64_t z = 0; z < out.size(); ++z) out[z] = base[z & mask];
  return out;
}

EvalResult evaluate(const AnsatzConfig& cfg, const QaoaProblem& prob, const NoiseModel& noise,
                    const EvalOptions& opts) {
  if (cfg.registers != prob.registers || cfg.width != prob.width) {
    throw std::invalid_argument("ansatz layout does not match the problem");
  }
  const Circuit logical = assemble(cfg, prob.separator_qubo);
  TranspileOptions topts;
  topts.mcx = opts.mcx;
  const Circuit c = transpile(logical, topts);
  DensityState st = run(c, noise, 0);
  if (st.rejected()) throw RejectedBranch("mid-circuit post-selection rejected every branch");
  EvalResult r;
  r.acc_mid = st.acceptance();
  if (opts.final_postselect) {
    r.acc_final = classical_postselect(st, register_onehot_subspace(c.n_qubits(), cfg.registers, cfg.width));
  }
  const auto diag = energy_diagonal(prob.energy_qubo, c.n_qubits());
  r.raw_energy = expectation(st, diag) / st.trace();
  r.energy = normalize_energy(r.raw_energy, prob.e_min, prob.e_max);
  return r;
}

Gate sqrt_iswap(int a, int b) { return Gate::xx_plus_yy(a, b, -kPi / 8); }

Circuit demo_hamming_ansatz(int n, int layers, const std::vector<double>& angles, bool entanglers) {
  if (n < 2) throw std::invalid_argument("demo ansatz needs n >= 2");
  if (layers < 0 || static_cast<int>(angles.size()) != layers * n) {
    throw std::invalid_argument("demo ansatz needs layers*n angles");
  }
  Circuit c(n);
  for (int l = 0; l < layers; ++l) {
    for (int i = 0; i < n; ++i) c.add(Gate::u1q(mat2::rz(angles[l * n + i]), i));
    if (!entanglers) continue;
    for (int i = l % 2; i + 1 < n; i += 2) c.add(sqrt_iswap(i, i + 1));
  }
  return c;
}

}  // namespace midselect
