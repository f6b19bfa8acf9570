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

#include "midselect/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace midselect {

namespace {

using u64 = std::uint64_t;

struct ControlMask {
  u64 mask = 0;
  u64 value = 0;
};

ControlMask control_mask(const Gate& g) {
  ControlMask cm;
  const auto ctrls = g.controls();
  for (std::size_t i = 0; i < ctrls.size(); ++i) {
    const u64 bit = u64{1} << ctrls[i];
    cm.mask |= bit;
    if (g.polarity[i]) cm.value |= bit;
  }
  return cm;
}

}  // namespace

StateVector::StateVector(int n_qubits, std::uint64_t basis_index) : n_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 30) throw std::invalid_argument("unsupported qubit count");
  const u64 dim = u64{1} << n_qubits;
  if (basis_index >= dim) throw std::out_of_range("basis index out of range");
  amps_ = VecX::Zero(static_cast<Eigen::Index>(dim));
  amps_(static_cast<Eigen::Index>(basis_index)) = 1.0;
}

StateVector::StateVector(int n_qubits, VecX amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != (Eigen::Index{1} << n_qubits)) {
    throw std::invalid_argument("amplitude vector length must be 2^n");
  }
}

void StateVector::check_wire(int w) const {
  if (w < 0 || w >= n_) throw std::out_of_range("wire out of range");
}

void StateVector::apply(const Gate& g) {
  for (int w : g.wires) check_wire(w);
  if (rejected_) return;
  const u64 dim = u64(amps_.size());
  switch (g.kind) {
    case GateKind::Barrier: return;
    case GateKind::U1q: {
      const u64 bit = u64{1} << g.wires[0];
      const Mat2& m = g.matrix;
      for (u64 i = 0; i < dim; ++i) {
        if (i & bit) continue;
        const cplx a = amps_(i), b = amps_(i | bit);
        amps_(i) = m(0, 0) * a + m(0, 1) * b;
        amps_(i | bit) = m(1, 0) * a + m(1, 1) * b;
      }
      return;
    }
    case GateKind::CNOT:
    case GateKind::MCX: {
      const auto cm = control_mask(g);
      const u64 t = u64{1} << g.target();
      for (u64 i = 0; i < dim; ++i) {
        if ((i & t) || (i & cm.mask) != cm.value) continue;
        std::swap(amps_(i), amps_(i | t));
      }
      return;
    }
    case GateKind::SWAP: {
      const u64 a = u64{1} << g.wires[0], b = u64{1} << g.wires[1];
      for (u64 i = 0; i < dim; ++i) {
        if ((i & a) && !(i & b)) std::swap(amps_(i), amps_((i & ~a) | b));
      }
      return;
    }
    case GateKind::ControlledPhase: {
      const auto cm = control_mask(g);
      const u64 t = u64{1} << g.target();
      const cplx ph = std::polar(1.0, g.angle);
      for (u64 i = 0; i < dim; ++i) {
        if ((i & t) && (i & cm.mask) == cm.value) amps_(i) *= ph;
      }
      return;
    }
    case GateKind::XXPlusYY: {
      // XX + YY = 2 (|01><10| + |10><01|) on the pair.
      const u64 a = u64{1} << g.wires[0], b = u64{1} << g.wires[1];
      const double c = std::cos(2 * g.angle), s = std::sin(2 * g.angle);
      for (u64 i = 0; i < dim; ++i) {
        if (!(i & a) || (i & b)) continue;
        const u64 j = (i & ~a) | b;
        const cplx x = amps_(i), y = amps_(j);
        amps_(i) = c * x - cplx(0, s) * y;
        amps_(j) = c * y - cplx(0, s) * x;
      }
      return;
    }
  }
}

double StateVector::probability_one(int wire) const {
  check_wire(wire);
  const u64 bit = u64{1} << wire;
  double p = 0;
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    if (u64(i) & bit) p += std::norm(amps_(i));
  }
  return p;
}

double StateVector::postselect_zero(std::span<const int> wires) {
  u64 mask = 0;
  for (int w : wires) {
    check_wire(w);
    mask |= u64{1} << w;
  }
  if (rejected_) return 0.0;
  double p = 0;
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    if (u64(i) & mask) {
      amps_(i) = 0;
    } else {
      p += std::norm(amps_(i));
    }
  }
  if (p < kRejectThreshold) {
    rejected_ = true;
    acceptance_ = 0.0;
    return p;
  }
  amps_ /= std::sqrt(p);
  acceptance_ *= p;
  return p;
}

void StateVector::reset(int wire) {
  check_wire(wire);
  if (rejected_) return;
  const double p1 = probability_one(wire);
  const u64 bit = u64{1} << wire;
  if (p1 < 1e-12) {
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      if (u64(i) & bit) amps_(i) = 0;
    }
    amps_.normalize();
  } else if (p1 > 1 - 1e-12) {
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
      if (!(u64(i) & bit)) {
        amps_(i) = amps_(i | bit);
        amps_(i | bit) = 0;
      }
    }
    amps_.normalize();
  } else {
    throw std::domain_error("reset of wire " + std::to_string(wire) +
                            " with random outcome needs the density simulator");
  }
}

void StateVector::apply(const Instruction& inst) {
  struct Visitor {
    StateVector& s;
    void operator()(const Gate& g) const { s.apply(g); }
    void operator()(const MeasureZ& m) const { measure(m.wire); }
    void operator()(const MeasureX& m) const {
      s.apply(Gate::u1q(mat2::h(), m.wire));
      measure(m.wire);
    }
    void operator()(const PostSelectZero& p) const { s.postselect_zero(p.wires); }
    void operator()(const Reset& r) const { s.reset(r.wire); }
    void measure(int wire) const {
      if (s.rejected()) return;
      const double p1 = s.probability_one(wire);
      if (p1 > 1e-12 && p1 < 1 - 1e-12) {
        throw std::domain_error("measurement with random outcome needs the density simulator");
      }
    }
  };
  std::visit(Visitor{*this}, inst);
}

void StateVector::run(const Circuit& c) {
  if (c.n_qubits() != n_) throw std::invalid_argument("circuit width does not match state");
  for (const auto& inst : c.instructions()) apply(inst);
}

MatX circuit_unitary(const Circuit& c) {
  if (!c.is_unitary()) throw std::invalid_argument("circuit_unitary: circuit is not unitary");
  if (c.n_qubits() > 14) throw std::invalid_argument("circuit_unitary: too many qubits");
  const Eigen::Index dim = Eigen::Index{1} << c.n_qubits();
  MatX u(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    StateVector sv(c.n_qubits(), static_cast<std::uint64_t>(j));
    sv.run(c);
    u.col(j) = sv.amplitudes();
  }
  return u;
}

double basis_acceptance(const Circuit& c, std::uint64_t basis_index) {
  StateVector sv(c.n_qubits(), basis_index);
  sv.run(c);
  return sv.acceptance();
}

}  // namespace midselect
