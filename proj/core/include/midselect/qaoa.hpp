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

#include <optional>
#include <utility>
#include <vector>

#include "midselect/circuit.hpp"
#include "midselect/density.hpp"
#include "midselect/qubo.hpp"
#include "midselect/transpile.hpp"

namespace midselect {

/// XY-QAOA layout: `registers` one-hot registers of `width` wires, register t on
/// wires t*width .. t*width+width-1.
struct AnsatzConfig {
  int registers = 0;
  int width = 0;
  int layers = 0;
  /// Insert per-register compression post-selection after every k-th layer; 0 disables.
  int postselect_every = 0;
  /// p_1..p_l followed by r_1..r_l.
  std::vector<double> angles;
  /// Also reject compressed values >= width (adds one ancilla when width is not a power of 2).
  bool bound_check = false;
  /// Trotter steps per mixer application.
  int mixer_steps = 1;

  int data_qubits() const { return registers * width; }
  void validate() const;
};

/// (|10..0> + |01..0> + ... + |0..01>)/√width on wires 0..width-1.
Circuit w_state_circuit(int width);

/// Pairs in application order: (2,3),(4,5),.. then (1,2),(3,4),.. in 1-based
/// numbering, then the wrap pair (width,1) when width >= 3.
std::vector<std::pair<int, int>> xy_mixer_pairs(int width);

/// exp(-i r Σ (XX+YY)) on one register, Trotterized into XXplusYY gates.
Circuit xy_mixer_layer(int width, double angle, int steps = 1);

/// Diagonal exp(-i p H) for the Ising form of `q`: Rz per field, CNOT-Rz-CNOT per coupling.
Circuit phase_separator(const QuboModel& q, double angle);

/// Per-register one-hot set on `n_qubits` wires; wires past the data register must read 0.
SubspaceSpec register_onehot_subspace(int n_qubits, int registers, int width);

/// Everything needed to evaluate ansatz energies for one TSP instance.
struct QaoaProblem {
  TspInstance instance;
  QuboModel energy_qubo;     // reduced model with every penalty
  QuboModel separator_qubo;  // reduced model without the one-city-per-time-point term
  double e_min = 0;
  double e_max = 0;
  int registers = 0;
  int width = 0;
};

QaoaProblem make_problem(const TspInstance& inst);

/// W states, then layers of (separator(p_i), mixer(r_i)), with compression
/// post-selection on every register after each `postselect_every`-th layer.
Circuit assemble(const AnsatzConfig& cfg, const QuboModel& separator);

struct EvalResult {
  double energy = 0;      // normalized
  double raw_energy = 0;
  double acc_mid = 1;     // product of mid-circuit post-selection probabilities
  double acc_final = 1;   // classical post-selection probability
  std::optional<SubspaceOverlaps> overlaps;
};

struct EvalOptions {
  bool final_postselect = true;
  McxStrategy mcx = McxStrategy::AncillaFree;
};

/// Density simulation from |0...0>. Throws RejectedBranch on total rejection.
EvalResult evaluate(const AnsatzConfig& cfg, const QaoaProblem& prob, const NoiseModel& noise,
                    const EvalOptions& opts = {});

/// Energy diagonal of `q` extended to `n_qubits` wires (extra wires ignored).
std::vector<double> energy_diagonal(const QuboModel& q, int n_qubits);

/// √iSWAP as exp(iπ/8 (XX+YY)).
Gate sqrt_iswap(int a, int b);

/// Columns of Rz(angle) on every wire alternating with a brick of √iSWAP pairs.
/// angles.size() must equal layers * n.
Circuit demo_hamming_ansatz(int n, int layers, const std::vector<double>& angles,
                            bool entanglers = true);

}  // namespace midselect
