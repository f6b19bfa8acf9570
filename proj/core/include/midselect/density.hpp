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
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "midselect/circuit.hpp"
#include "midselect/linalg.hpp"

namespace midselect {

enum class NoiseFamily { None, Depolarizing, AmplitudeDamping, RandomX };

std::string_view to_string(NoiseFamily f);
/// Accepts none | depol | ampdamp | randx (and the long spellings).
NoiseFamily parse_noise_family(std::string_view name);

/// Gate-level noise applied after every gate on the wires it touches.
///
///   depolarizing       (1-γ)ρ + γ I/d ⊗ Tr_gate(ρ), d = 2 or 4
///   amplitude damping  K0 = diag(1, √(1-γ)), K1 = √γ |0><1|, per wire
///   random X           (1-γ)ρ + γ XρX, per wire
///
/// Construction verifies Σ K†K = I for the family's Kraus set.
class NoiseModel {
 public:
  NoiseModel() = default;
  NoiseModel(NoiseFamily family, double gamma);

  static NoiseModel none() { return {}; }

  NoiseFamily family() const { return family_; }
  double gamma() const { return gamma_; }
  bool is_noiseless() const { return family_ == NoiseFamily::None || gamma_ == 0.0; }

  /// Kraus operators acting on a single wire (depolarizing uses the Pauli form).
  std::vector<Mat2> kraus_1q() const;
  /// Kraus operators for the channel that follows a two-qubit gate, as 4x4 matrices
  /// in the (first wire = low bit) ordering.
  std::vector<Eigen::Matrix4cd> kraus_2q() const;

 private:
  NoiseFamily family_ = NoiseFamily::None;
  double gamma_ = 0.0;
};

/// Max-norm deviation of Σ K†K from the identity.
double kraus_completeness_error(std::span<const Mat2> kraus);
double kraus_completeness_error(std::span<const Eigen::Matrix4cd> kraus);

/// Set of valid computational basis states.
class SubspaceSpec {
 public:
  static SubspaceSpec from_indices(int n_qubits, std::vector<std::uint64_t> indices);
  static SubspaceSpec from_predicate(int n_qubits,
                                     const std::function<bool(std::uint64_t)>& valid);

  int n_qubits() const { return n_; }
  const std::vector<std::uint64_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool contains(std::uint64_t basis) const;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> indices_;
};

/// Raised when a branch has (numerically) zero probability.
class RejectedBranch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense density matrix plus the cumulative acceptance probability of every
/// post-selection applied so far. Wire 0 is the least significant index bit.
class DensityState {
 public:
  explicit DensityState(int n_qubits, std::uint64_t basis_index = 0);
  DensityState(int n_qubits, MatX rho);

  static DensityState from_pure(int n_qubits, const VecX& psi);
  static DensityState maximally_mixed(int n_qubits);

  int n_qubits() const { return n_; }
  Eigen::Index dim() const { return rho_.rows(); }
  const MatX& rho() const { return rho_; }
  double acceptance() const { return acceptance_; }
  bool rejected() const { return rejected_; }
  double trace() const { return rho_.trace().real(); }

  // Low-level kernels. They do not apply noise.
  void apply_1q(const Mat2& u, int wire);
  void apply_cnot(int control, int target);
  void apply_channel(std::span<const Mat2> kraus, int wire);
  void depolarize(std::span<const int> wires, double gamma);
  void random_x(int wire, double gamma);
  void amplitude_damp(int wire, double gamma);
  void dephase(int wire);
  void reset(int wire);
  /// Keeps basis rows/columns where `keep` is true; returns the kept trace.
  double project(const std::function<bool(std::uint64_t)>& keep);

 private:
  friend double postselect_zero(DensityState&, std::span<const int>);
  friend double classical_postselect(DensityState&, const SubspaceSpec&);
  double renormalize_after_projection(double p);
  void check_wire(int w) const;

  int n_;
  MatX rho_;
  double acceptance_ = 1.0;
  bool rejected_ = false;
};

/// ρ ← UρU† followed by the noise channel on the gate's wires.
/// Only transpiled gates (U1q, closed-control CNOT) are accepted.
void apply_gate(DensityState& state, const Gate& gate, const NoiseModel& noise);

/// Projects `wires` onto |0>; renormalizes and returns the branch probability.
/// Below 1e-14 the state is marked rejected with acceptance 0 and left untouched.
double postselect_zero(DensityState& state, std::span<const int> wires);

/// ρ ← Π_S ρ Π_S / tr. Throws RejectedBranch when the overlap with S vanishes.
double classical_postselect(DensityState& state, const SubspaceSpec& s);

struct SubspaceOverlaps {
  double p1 = 0;  // ideal state
  double p2 = 0;  // valid but incorrect
  double p3 = 0;  // invalid
};

SubspaceOverlaps subspace_overlaps(const DensityState& state, const VecX& ideal,
                                   const SubspaceSpec& s);

/// Σ_z H[z] ρ[z,z] for a diagonal Hamiltonian.
double expectation(const DensityState& state, std::span<const double> diagonal);

/// Folds a transpiled circuit over |initial>. MeasureX is applied as H then MeasureZ.
DensityState run(const Circuit& c, const NoiseModel& noise, std::uint64_t initial = 0);

double min_eigenvalue(const DensityState& state);

/// {n_qubits, acceptance, rho: row-major [re, im]}; refuses states above 10 qubits.
std::string density_to_json(const DensityState& state);

}  // namespace midselect
