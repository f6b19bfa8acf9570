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

#include <gtest/gtest.h>

#include <random>

#include <json.hpp>
#include <midselect/density.hpp>
#include <midselect/statevector.hpp>
#include <midselect/transpile.hpp>

#include "oracle.hpp"

using namespace midselect;

namespace {

MatX kraus_oracle(const MatX& rho, int n, const std::vector<Mat2>& ks, int w) {
  MatX out = MatX::Zero(rho.rows(), rho.cols());
  for (const auto& k : ks) {
    const MatX e = oracle::embed_1q(n, k, w);
    out += e * rho * e.adjoint();
  }
  return out;
}

const std::vector<Mat2> kPaulis = {mat2::identity(), mat2::x(), mat2::y(), mat2::z()};

}  // namespace

TEST(Noise, KrausCompleteness) {
  for (auto fam : {NoiseFamily::Depolarizing, NoiseFamily::AmplitudeDamping, NoiseFamily::RandomX}) {
    for (double g : {0.0, 1e-3, 0.01, 0.3, 0.75, 1.0}) {
      const NoiseModel m(fam, g);
      EXPECT_LT(kraus_completeness_error(m.kraus_1q()), 1e-12) << to_string(fam) << " " << g;
      EXPECT_LT(kraus_completeness_error(m.kraus_2q()), 1e-12) << to_string(fam) << " " << g;
    }
  }
}

TEST(Noise, RejectsBadGamma) {
  EXPECT_THROW(NoiseModel(NoiseFamily::RandomX, -0.1), std::invalid_argument);
  EXPECT_THROW(NoiseModel(NoiseFamily::Depolarizing, 1.5), std::invalid_argument);
  EXPECT_EQ(parse_noise_family("depol"), NoiseFamily::Depolarizing);
  EXPECT_EQ(parse_noise_family("ampdamp"), NoiseFamily::AmplitudeDamping);
  EXPECT_EQ(parse_noise_family("randx"), NoiseFamily::RandomX);
  EXPECT_THROW(parse_noise_family("bitflop"), std::invalid_argument);
}

TEST(DensityKernels, UnitaryConjugationMatchesOracle) {
  std::mt19937_64 rng(11);
  const int n = 3;
  const MatX rho0 = oracle::random_density(n, rng);
  for (int w = 0; w < n; ++w) {
    DensityState st(n, rho0);
    const Mat2 u = oracle::random_unitary_2(rng);
    st.apply_1q(u, w);
    const MatX e = oracle::embed_1q(n, u, w);
    EXPECT_LT(max_abs_diff(st.rho(), e * rho0 * e.adjoint()), 1e-12);
  }
  DensityState st(n, rho0);
  st.apply_cnot(2, 0);
  const MatX c = oracle::gate_matrix(n, Gate::cnot(2, 0));
  EXPECT_LT(max_abs_diff(st.rho(), c * rho0 * c.adjoint()), 1e-12);
}

TEST(DensityKernels, ChannelsMatchKrausOracle) {
  std::mt19937_64 rng(12);
  const int n = 3;
  const MatX rho0 = oracle::random_density(n, rng);
  const double g = 0.37;
  for (int w = 0; w < n; ++w) {
    DensityState a(n, rho0);
    a.amplitude_damp(w, g);
    Mat2 k0 = Mat2::Zero(), k1 = Mat2::Zero();
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - g);
    k1(0, 1) = std::sqrt(g);
    EXPECT_LT(max_abs_diff(a.rho(), kraus_oracle(rho0, n, {k0, k1}, w)), 1e-12);

    DensityState x(n, rho0);
    x.random_x(w, g);
    EXPECT_LT(max_abs_diff(x.rho(), kraus_oracle(rho0, n, {std::sqrt(1 - g) * mat2::identity(),
                                                           std::sqrt(g) * mat2::x()}, w)),
              1e-12);

    // Single-wire depolarizing equals the Pauli twirl with weights 1-3g/4, g/4.
    DensityState d(n, rho0);
    const std::vector<int> wires = {w};
    d.depolarize(wires, g);
    std::vector<Mat2> ks = {std::sqrt(1 - 3 * g / 4) * kPaulis[0]};
    for (int p = 1; p < 4; ++p) ks.push_back(std::sqrt(g / 4) * kPaulis[p]);
    EXPECT_LT(max_abs_diff(d.rho(), kraus_oracle(rho0, n, ks, w)), 1e-12);
  }
}

TEST(DensityKernels, TwoWireDepolarizingUsesFourDimensionalMixing) {
  std::mt19937_64 rng(13);
  const int n = 3;
  const MatX rho0 = oracle::random_density(n, rng);
  const double g = 0.21;
  DensityState d(n, rho0);
  const std::vector<int> wires = {0, 2};
  d.depolarize(wires, g);
  MatX want = MatX::Zero(8, 8);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double wgt = (a == 0 && b == 0) ? 1 - 15 * g / 16 : g / 16;
      const MatX e = oracle::embed_1q(n, kPaulis[a], 0) * oracle::embed_1q(n, kPaulis[b], 2);
      want += wgt * e * rho0 * e.adjoint();
    }
  }
  EXPECT_LT(max_abs_diff(d.rho(), want), 1e-12);
}

TEST(DensityKernels, FullStrengthLimits) {
  std::mt19937_64 rng(14);
  DensityState one(1, 1);
  one.amplitude_damp(0, 1.0);
  EXPECT_NEAR(one.rho()(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(one.rho()(1, 1)), 0.0, 1e-12);

  DensityState d1(1, oracle::random_density(1, rng));
  const std::vector<int> w0 = {0};
  d1.depolarize(w0, 1.0);
  EXPECT_LT(max_abs_diff(d1.rho(), MatX::Identity(2, 2) / 2.0), 1e-12);

  DensityState d2(2, oracle::random_density(2, rng));
  apply_gate(d2, Gate::cnot(0, 1), NoiseModel(NoiseFamily::Depolarizing, 1.0));
  EXPECT_LT(max_abs_diff(d2.rho(), MatX::Identity(4, 4) / 4.0), 1e-12);
}

TEST(DensityKernels, TracePreservedOverRandomNoisyGates) {
  std::mt19937_64 rng(15);
  for (auto fam : {NoiseFamily::Depolarizing, NoiseFamily::AmplitudeDamping, NoiseFamily::RandomX}) {
    const NoiseModel noise(fam, 0.05);
    DensityState st(3, oracle::random_density(3, rng));
    for (int i = 0; i < 1000; ++i) {
      const int a = static_cast<int>(rng() % 3);
      if (rng() & 1U) {
        apply_gate(st, Gate::u1q(oracle::random_unitary_2(rng), a), noise);
      } else {
        apply_gate(st, Gate::cnot(a, (a + 1 + static_cast<int>(rng() % 2)) % 3), noise);
      }
    }
    EXPECT_NEAR(st.trace(), 1.0, 1e-10) << to_string(fam);
    EXPECT_GT(min_eigenvalue(st), -1e-10);
    EXPECT_LT((st.rho() - st.rho().adjoint()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(DensityKernels, ApplyGateRejectsLogicalGates) {
  DensityState st(3);
  EXPECT_THROW(apply_gate(st, Gate::toffoli(0, 1, 2), NoiseModel::none()), std::invalid_argument);
  EXPECT_THROW(apply_gate(st, Gate::cnot(0, 1, false), NoiseModel::none()), std::invalid_argument);
}

TEST(DensityKernels, ResetIsPartialTraceThenZero) {
  VecX bell = VecX::Zero(4);
  bell(0) = bell(3) = 1 / std::sqrt(2.0);
  DensityState st = DensityState::from_pure(2, bell);
  st.reset(1);
  MatX want = MatX::Zero(4, 4);
  want(0, 0) = want(1, 1) = 0.5;
  EXPECT_LT(max_abs_diff(st.rho(), want), 1e-12);
  EXPECT_DOUBLE_EQ(st.acceptance(), 1.0);
}

TEST(PostSelection, ZeroProjection) {
  VecX psi(4);
  psi << 0.6, 0, 0, 0.8;
  DensityState st = DensityState::from_pure(2, psi);
  const std::vector<int> w = {1};
  EXPECT_NEAR(postselect_zero(st, w), 0.36, 1e-12);
  EXPECT_NEAR(st.acceptance(), 0.36, 1e-12);
  EXPECT_NEAR(st.rho()(0, 0).real(), 1.0, 1e-12);

  DensityState dead(2, 2);
  EXPECT_NEAR(postselect_zero(dead, w), 0.0, 1e-15);
  EXPECT_TRUE(dead.rejected());
  EXPECT_EQ(dead.acceptance(), 0.0);
}

TEST(PostSelection, ClassicalProjectorMatchesOracle) {
  std::mt19937_64 rng(16);
  const MatX rho0 = oracle::random_density(3, rng);
  const auto s = SubspaceSpec::from_indices(3, {1, 2, 4});
  DensityState st(3, rho0);
  const double p = classical_postselect(st, s);
  MatX proj = MatX::Zero(8, 8);
  for (auto z : s.indices()) proj(static_cast<Eigen::Index>(z), static_cast<Eigen::Index>(z)) = 1;
  const MatX want = proj * rho0 * proj;
  EXPECT_NEAR(p, want.trace().real(), 1e-12);
  EXPECT_LT(max_abs_diff(st.rho(), want / p), 1e-12);

  DensityState off(3, 0);
  EXPECT_THROW(classical_postselect(off, s), RejectedBranch);
}

TEST(PostSelection, SubspaceOverlapsPartitionUnity) {
  std::mt19937_64 rng(17);
  const auto s = SubspaceSpec::from_predicate(3, [](std::uint64_t z) { return oracle::popcount(z) == 1; });
  VecX ideal = VecX::Zero(8);
  ideal(1) = ideal(2) = 1 / std::sqrt(2.0);
  DensityState st(3, oracle::random_density(3, rng));
  const auto o = subspace_overlaps(st, ideal, s);
  EXPECT_NEAR(o.p1 + o.p2 + o.p3, 1.0, 1e-12);
  EXPECT_GE(o.p2, -1e-12);

  DensityState pure = DensityState::from_pure(3, ideal);
  const auto q = subspace_overlaps(pure, ideal, s);
  EXPECT_NEAR(q.p1, 1.0, 1e-12);
  EXPECT_NEAR(q.p3, 0.0, 1e-12);

  VecX outside = VecX::Zero(8);
  outside(3) = 1;
  EXPECT_THROW(subspace_overlaps(pure, outside, s), std::invalid_argument);
}

TEST(DensityRun, NoiselessMatchesStateVector) {
  std::mt19937_64 rng(18);
  Circuit c(4);
  for (int i = 0; i < 20; ++i) {
    const int a = static_cast<int>(rng() % 4);
    c.add(Gate::u1q(oracle::random_unitary_2(rng), a));
    c.add(Gate::mcx({a, (a + 1) % 4}, (a + 2) % 4, {true, false}));
    c.add(Gate::xx_plus_yy(a, (a + 3) % 4, 0.3));
  }
  const Circuit t = transpile(c);
  const DensityState st = run(t, NoiseModel::none(), 5);
  StateVector sv(4, 5);
  sv.run(c);
  const MatX want = sv.amplitudes() * sv.amplitudes().adjoint();
  EXPECT_LT(max_abs_diff(st.rho(), want), 1e-10);
}

TEST(DensityRun, MeasureXCollapsesInXBasis) {
  Circuit c(1);
  c.add(Gate::u1q(mat2::h(), 0));
  c.add(MeasureX{0});
  const auto st = run(c, NoiseModel::none());
  EXPECT_NEAR(st.rho()(0, 0).real(), 1.0, 1e-12);
}

TEST(DensityRun, NoiseSkipsMeasurementAndReset) {
  Circuit c(1);
  c.add(Reset{0});
  c.add(MeasureZ{0});
  const auto st = run(c, NoiseModel(NoiseFamily::RandomX, 0.5));
  EXPECT_NEAR(st.rho()(0, 0).real(), 1.0, 1e-12);
}

TEST(DensityJson, DumpShape) {
  DensityState st(1, 1);
  const auto j = nlohmann::json::parse(density_to_json(st));
  EXPECT_EQ(j.at("n_qubits").get<int>(), 1);
  ASSERT_EQ(j.at("rho").size(), 2u);
  EXPECT_DOUBLE_EQ(j.at("rho")[1][1][0].get<double>(), 1.0);
}
