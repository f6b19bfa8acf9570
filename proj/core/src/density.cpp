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

#include "midselect/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "midselect/statevector.hpp"

namespace midselect {

namespace {

using Index = Eigen::Index;

constexpr double kKrausTol = 1e-12;

Mat2 depol_kraus_scale(const Mat2& p, double w) { return std::sqrt(w) * p; }

Eigen::Matrix4cd kron(const Mat2& hi, const Mat2& lo) {
  Eigen::Matrix4cd out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) out(2 * a + c, 2 * b + d) = hi(a, b) * lo(c, d);
      }
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(NoiseFamily f) {
  switch (f) {
    case NoiseFamily::None: return "none";
    case NoiseFamily::Depolarizing: return "depol";
    case NoiseFamily::AmplitudeDamping: return "ampdamp";
    case NoiseFamily::RandomX: return "randx";
  }
  return "?";
}

NoiseFamily parse_noise_family(std::string_view name) {
  if (name == "none") return NoiseFamily::None;
  if (name == "depol" || name == "depolarizing") return NoiseFamily::Depolarizing;
  if (name == "ampdamp" || name == "amplitude_damping") return NoiseFamily::AmplitudeDamping;
  if (name == "randx" || name == "random_x") return NoiseFamily::RandomX;
  throw std::invalid_argument("unknown noise family '" + std::string(name) + "'");
}

NoiseModel::NoiseModel(NoiseFamily family, double gamma) : family_(family), gamma_(gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("noise strength must lie in [0, 1]");
  }
  const auto k1 = kraus_1q();
  const auto k2 = kraus_2q();
  if (kraus_completeness_error(k1) > kKrausTol || kraus_completeness_error(k2) > kKrausTol) {
    throw std::domain_error("Kraus set is not trace preserving");
  }
}

std::vector<Mat2> NoiseModel::kraus_1q() const {
  const double g = gamma_;
  switch (family_) {
    case NoiseFamily::None: return {mat2::identity()};
    case NoiseFamily::Depolarizing:
      return {depol_kraus_scale(mat2::identity(), 1.0 - 0.75 * g),
              depol_kraus_scale(mat2::x(), g / 4), depol_kraus_scale(mat2::y(), g / 4),
              depol_kraus_scale(mat2::z(), g / 4)};
    case NoiseFamily::AmplitudeDamping: {
      Mat2 k0 = Mat2::Zero(), k1 = Mat2::Zero();
      k0(0, 0) = 1.0;
      k0(1, 1) = std::sqrt(1.0 - g);
      k1(0, 1) = std::sqrt(g);
      return {k0, k1};
    }
    case NoiseFamily::RandomX:
      return {depol_kraus_scale(mat2::identity(), 1.0 - g), depol_kraus_scale(mat2::x(), g)};
  }
  return {};
}

std::vector<Eigen::Matrix4cd> NoiseModel::kraus_2q() const {
  std::vector<Eigen::Matrix4cd> out;
  if (family_ == NoiseFamily::Depolarizing) {
    // Two-qubit depolarizing: 1 - 15γ/16 on the identity, γ/16 on each other Pauli pair.
    const Mat2 paulis[4] = {mat2::identity(), mat2::x(), mat2::y(), mat2::z()};
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const double w = (a == 0 && b == 0) ? 1.0 - 15.0 * gamma_ / 16.0 : gamma_ / 16.0;
        out.push_back(std::sqrt(w) * kron(paulis[a], paulis[b]));
      }
    }
    return out;
  }
  // Other families act independently on each wire.
  const auto k = kraus_1q();
  for (const auto& hi : k) {
    for (const auto& lo : k) out.push_back(kron(hi, lo));
  }
  return out;
}

double kraus_completeness_error(std::span<const Mat2> kraus) {
  Mat2 sum = Mat2::Zero();
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return (sum - Mat2::Identity()).cwiseAbs().maxCoeff();
}

double kraus_completeness_error(std::span<const Eigen::Matrix4cd> kraus) {
  Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
  for (const auto& k : kraus) sum += k.adjoint() * k;
  return (sum - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------- SubspaceSpec

SubspaceSpec SubspaceSpec::from_indices(int n_qubits, std::vector<std::uint64_t> indices) {
  if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("subspace qubit count out of range");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  if (indices.empty()) throw std::invalid_argument("subspace is empty");
  if (indices.back() >= (std::uint64_t{1} << n_qubits)) {
    throw std::out_of_range("subspace index exceeds the register");
  }
  SubspaceSpec s;
  s.n_ = n_qubits;
  s.indices_ = std::move(indices);
  return s;
}

SubspaceSpec SubspaceSpec::from_predicate(int n_qubits,
                                          const std::function<bool(std::uint64_t)>& valid) {
  if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("subspace qubit count out of range");
  std::vector<std::uint64_t> idx;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << n_qubits); ++z) {
    if (valid(z)) idx.push_back(z);
  }
  return from_indices(n_qubits, std::move(idx));
}

bool SubspaceSpec::contains(std::uint64_t basis) const {
  return std::binary_search(indices_.begin(), indices_.end(), basis);
}

// ---------------------------------------------------------------- DensityState

DensityState::DensityState(int n_qubits, std::uint64_t basis_index) : n_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 14) throw std::invalid_argument("density state supports 1..14 qubits");
  const Index dim = Index{1} << n_qubits;
  if (basis_index >= static_cast<std::uint64_t>(dim)) throw std::out_of_range("basis index out of range");
  rho_ = MatX::Zero(dim, dim);
  rho_(static_cast<Index>(basis_index), static_cast<Index>(basis_index)) = 1.0;
}

DensityState::DensityState(int n_qubits, MatX rho) : n_(n_qubits), rho_(std::move(rho)) {
  if (n_qubits < 1 || n_qubits > 14) throw std::invalid_argument("density state supports 1..14 qubits");
  const Index dim = Index{1} << n_qubits;
  if (rho_.rows() != dim || rho_.cols() != dim) throw std::invalid_argument("density matrix has wrong shape");
}

DensityState DensityState::from_pure(int n_qubits, const VecX& psi) {
  const Index dim = Index{1} << n_qubits;
  if (psi.size() != dim) throw std::invalid_argument("state vector has wrong length");
  return DensityState(n_qubits, MatX(psi * psi.adjoint()));
}

DensityState DensityState::maximally_mixed(int n_qubits) {
  const Index dim = Index{1} << n_qubits;
  return DensityState(n_qubits, MatX(MatX::Identity(dim, dim) / static_cast<double>(dim)));
}

void DensityState::check_wire(int w) const {
  if (w < 0 || w >= n_) throw std::out_of_range("wire " + std::to_string(w) + " out of range");
}

void DensityState::apply_1q(const Mat2& u, int wire) {
  check_wire(wire);
  const Index dim = this->dim();
  const Index b = Index{1} << wire;
  const cplx u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
  // Left: rows (i, i|b) of every column.
  for (Index j = 0; j < dim; ++j) {
    cplx* col = rho_.col(j).data();
    for (Index i = 0; i < dim; ++i) {
      if (i & b) continue;
      const cplx a0 = col[i], a1 = col[i | b];
      col[i] = u00 * a0 + u01 * a1;
      col[i | b] = u10 * a0 + u11 * a1;
    }
  }
  // Right: columns (j, j|b) times U†.
  const cplx c00 = std::conj(u00), c01 = std::conj(u01), c10 = std::conj(u10), c11 = std::conj(u11);
  for (Index j = 0; j < dim; ++j) {
    if (j & b) continue;
    cplx* lo = rho_.col(j).data();
    cplx* hi = rho_.col(j | b).data();
    for (Index i = 0; i < dim; ++i) {
      const cplx a0 = lo[i], a1 = hi[i];
      lo[i] = a0 * c00 + a1 * c01;
      hi[i] = a0 * c10 + a1 * c11;
    }
  }
}

void DensityState::apply_cnot(int control, int target) {
  check_wire(control);
  check_wire(target);
  if (control == target) throw std::invalid_argument("cnot control equals target");
  const Index dim = this->dim();
  const Index cb = Index{1} << control, tb = Index{1} << target;
  for (Index j = 0; j < dim; ++j) {
    if ((j & cb) && !(j & tb)) rho_.col(j).swap(rho_.col(j | tb));
  }
  for (Index j = 0; j < dim; ++j) {
    cplx* col = rho_.col(j).data();
    for (Index i = 0; i < dim; ++i) {
      if ((i & cb) && !(i & tb)) std::swap(col[i], col[i | tb]);
    }
  }
}

void DensityState::apply_channel(std::span<const Mat2> kraus, int wire) {
  check_wire(wire);
  MatX acc = MatX::Zero(dim(), dim());
  const MatX saved = rho_;
  for (const auto& k : kraus) {
    rho_ = saved;
    // apply_1q computes K ρ K† for any 2x2 K, unitary or not.
    apply_1q(k, wire);
    acc += rho_;
  }
  rho_ = std::move(acc);
}

void DensityState::depolarize(std::span<const int> wires, double gamma) {
  if (wires.empty() || wires.size() > 2) throw std::invalid_argument("depolarizing acts on 1 or 2 wires");
  Index mask = 0;
  for (int w : wires) {
    check_wire(w);
    mask |= Index{1} << w;
  }
  const Index dim = this->dim();
  const double d = static_cast<double>(Index{1} << wires.size());
  std::vector<Index> subs;  // all settings of the wires in `mask`
  for (Index s = 0; s <= mask; ++s) {
    if ((s & ~mask) == 0) subs.push_back(s);
  }
  if (gamma == 0.0) return;
  for (Index j = 0; j < dim; ++j) {
    if (j & mask) continue;
    for (Index i = 0; i < dim; ++i) {
      if (i & mask) continue;
      cplx t = 0;
      for (Index s : subs) t += rho_(i | s, j | s);
      for (Index s : subs) {
        for (Index r : subs) rho_(i | s, j | r) *= (1.0 - gamma);
        rho_(i | s, j | s) += gamma * t / d;
      }
    }
  }
}

void DensityState::random_x(int wire, double gamma) {
  check_wire(wire);
  const Index dim = this->dim();
  const Index b = Index{1} << wire;
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      if (i & b) continue;
      cplx& a = rho_(i, j);
      cplx& c = rho_(i | b, j ^ b);
      const cplx x = a, y = c;
      a = (1.0 - gamma) * x + gamma * y;
      c = (1.0 - gamma) * y + gamma * x;
    }
  }
}

void DensityState::amplitude_damp(int wire, double gamma) {
  check_wire(wire);
  const Index dim = this->dim();
  const Index b = Index{1} << wire;
  const double s = std::sqrt(1.0 - gamma);
  for (Index j = 0; j < dim; ++j) {
    if (j & b) continue;
    for (Index i = 0; i < dim; ++i) {
      if (i & b) continue;
      const cplx r11 = rho_(i | b, j | b);
      rho_(i, j) += gamma * r11;
      rho_(i, j | b) *= s;
      rho_(i | b, j) *= s;
      rho_(i | b, j | b) = (1.0 - gamma) * r11;
    }
  }
}

void DensityState::dephase(int wire) {
  check_wire(wire);
  const Index dim = this->dim();
  const Index b = Index{1} << wire;
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      if ((i ^ j) & b) rho_(i, j) = 0;
    }
  }
}

void DensityState::reset(int wire) {
  check_wire(wire);
  const Index dim = this->dim();
  const Index b = Index{1} << wire;
  for (Index j = 0; j < dim; ++j) {
    if (j & b) continue;
    for (Index i = 0; i < dim; ++i) {
      if (i & b) continue;
      rho_(i, j) += rho_(i | b, j | b);
      rho_(i | b, j | b) = 0;
      rho_(i | b, j) = 0;
      rho_(i, j | b) = 0;
    }
  }
}

double DensityState::project(const std::function<bool(std::uint64_t)>& keep) {
  const Index dim = this->dim();
  std::vector<char> k(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) k[i] = keep(static_cast<std::uint64_t>(i)) ? 1 : 0;
  double p = 0;
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      if (!k[i] || !k[j]) rho_(i, j) = 0;
    }
    if (k[j]) p += rho_(j, j).real();
  }
  return p;
}

double DensityState::renormalize_after_projection(double p) {
  if (p < kRejectThreshold) {
    rejected_ = true;
    acceptance_ = 0.0;
    return p;
  }
  rho_ /= p;
  acceptance_ *= p;
  return p;
}

// ---------------------------------------------------------------- operations

void apply_gate(DensityState& state, const Gate& gate, const NoiseModel& noise) {
  if (gate.kind == GateKind::Barrier) return;
  if (gate.kind == GateKind::U1q) {
    state.apply_1q(gate.matrix, gate.wires[0]);
  } else if (gate.kind == GateKind::CNOT && gate.polarity.at(0)) {
    state.apply_cnot(gate.wires[0], gate.wires[1]);
  } else {
    throw std::invalid_argument("density simulator needs a transpiled circuit; got gate '" +
                                std::string(to_string(gate.kind)) + "'");
  }
  if (noise.is_noiseless()) return;
  const double g = noise.gamma();
  switch (noise.family()) {
    case NoiseFamily::Depolarizing: state.depolarize(gate.wires, g); break;
    case NoiseFamily::AmplitudeDamping:
      for (int w : gate.wires) state.amplitude_damp(w, g);
      break;
    case NoiseFamily::RandomX:
      for (int w : gate.wires) state.random_x(w, g);
      break;
    case NoiseFamily::None: break;
  }
}

double postselect_zero(DensityState& state, std::span<const int> wires) {
  if (wires.empty()) throw std::invalid_argument("postselect needs at least one wire");
  std::uint64_t mask = 0;
  for (int w : wires) {
    state.check_wire(w);
    mask |= std::uint64_t{1} << w;
  }
  if (state.rejected()) return 0.0;
  double p = 0;
  for (Index z = 0; z < state.dim(); ++z) {
    if ((static_cast<std::uint64_t>(z) & mask) == 0) p += state.rho()(z, z).real();
  }
  if (p >= kRejectThreshold) state.project([mask](std::uint64_t z) { return (z & mask) == 0; });
  return state.renormalize_after_projection(p);
}

double classical_postselect(DensityState& state, const SubspaceSpec& s) {
  if (s.n_qubits() != state.n_qubits()) throw std::invalid_argument("subspace size does not match state");
  const double p = state.project([&s](std::uint64_t z) { return s.contains(z); });
  if (p < kRejectThreshold) {
    state.rejected_ = true;
    state.acceptance_ = 0.0;
    throw RejectedBranch("state has no overlap with the valid subspace");
  }
  state.renormalize_after_projection(p);
  return p;
}

SubspaceOverlaps subspace_overlaps(const DensityState& state, const VecX& ideal,
                                   const SubspaceSpec& s) {
  if (s.n_qubits() != state.n_qubits()) throw std::invalid_argument("subspace size does not match state");
  if (ideal.size() != state.dim()) throw std::invalid_argument("ideal state has wrong length");
  if (std::abs(ideal.squaredNorm() - 1.0) > 1e-9) throw std::invalid_argument("ideal state is not normalized");
  for (Index z = 0; z < ideal.size(); ++z) {
    if (std::abs(ideal(z)) > 1e-9 && !s.contains(static_cast<std::uint64_t>(z))) {
      throw std::invalid_argument("ideal state leaves the valid subspace");
    }
  }
  const MatX& rho = state.rho();
  SubspaceOverlaps o;
  o.p1 = (ideal.adjoint() * rho * ideal)(0, 0).real();
  double in_s = 0;
  for (std::uint64_t z : s.indices()) in_s += rho(static_cast<Index>(z), static_cast<Index>(z)).real();
  o.p2 = in_s - o.p1;
  o.p3 = state.trace() - in_s;
  return o;
}

double expectation(const DensityState& state, std::span<const double> diagonal) {
  if (static_cast<Index>(diagonal.size()) != state.dim()) {
    throw std::invalid_argument("Hamiltonian diagonal has wrong length");
  }
  double e = 0;
  for (Index z = 0; z < state.dim(); ++z) e += diagonal[z] * state.rho()(z, z).real();
  return e;
}

DensityState run(const Circuit& c, const NoiseModel& noise, std::uint64_t initial) {
  DensityState st(c.n_qubits(), initial);
  for (const auto& inst : c.instructions()) {
    if (const auto* g = std::get_if<Gate>(&inst)) {
      apply_gate(st, *g, noise);
    } else if (const auto* m = std::get_if<MeasureZ>(&inst)) {
      st.dephase(m->wire);
    } else if (const auto* m = std::get_if<MeasureX>(&inst)) {
      st.apply_1q(mat2::h(), m->wire);
      st.dephase(m->wire);
    } else if (const auto* p = std::get_if<PostSelectZero>(&inst)) {
      postselect_zero(st, p->wires);
      if (st.rejected()) return st;
    } else if (const auto* r = std::get_if<Reset>(&inst)) {
      st.reset(r->wire);
    }
  }
  return st;
}

double min_eigenvalue(const DensityState& state) {
  Eigen::SelfAdjointEigenSolver<MatX> es(state.rho(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::string density_to_json(const DensityState& state) {
  if (state.n_qubits() > 10) throw std::invalid_argument("state dump is limited to 10 qubits");
  nlohmann::json j;
  j["n_qubits"] = state.n_qubits();
  j["acceptance"] = state.acceptance();
  nlohmann::json rows = nlohmann::json::array();
  for (Index r = 0; r < state.dim(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Index c = 0; c < state.dim(); ++c) {
      row.push_back({state.rho()(r, c).real(), state.rho()(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  j["rho"] = std::move(rows);
  return j.dump();
}

}  // namespace midselect
