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

#include "midselect/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace midselect {

namespace mat2 {

Mat2 identity() { return Mat2::Identity(); }

Mat2 x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 y() {
  Mat2 m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Mat2 z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 h() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat2 m;
  m << r, r, r, -r;
  return m;
}

Mat2 s() { return phase(kPi / 2); }
Mat2 t() { return phase(kPi / 4); }

Mat2 rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2 m;
  m << c, cplx(0, -s), cplx(0, -s), c;
  return m;
}

Mat2 ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

Mat2 rz(double theta) {
  Mat2 m;
  m << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2);
  return m;
}

Mat2 phase(double phi) {
  Mat2 m;
  m << 1, 0, 0, std::polar(1.0, phi);
  return m;
}

}  // namespace mat2

bool is_unitary(const Mat2& u, double tol) {
  return ((u.adjoint() * u) - Mat2::Identity()).cwiseAbs().maxCoeff() < tol;
}

ZyzAngles zyz_decompose(const Mat2& u) {
  ZyzAngles out;
  const cplx det = u.determinant();
  out.alpha = std::arg(det) / 2;
  const Mat2 su = u * std::polar(1.0, -out.alpha);
  // su = [[e^{-i(β+δ)/2} cos(γ/2), -e^{-i(β-δ)/2} sin(γ/2)],
  //       [e^{ i(β-δ)/2} sin(γ/2),  e^{ i(β+δ)/2} cos(γ/2)]]
  const cplx a = su(1, 1);
  const cplx b = su(1, 0);
  out.gamma = 2 * std::atan2(std::abs(b), std::abs(a));
  const double sum = std::abs(a) > 1e-14 ? 2 * std::arg(a) : 0.0;
  const double diff = std::abs(b) > 1e-14 ? 2 * std::arg(b) : 0.0;
  out.beta = (sum + diff) / 2;
  out.delta = (sum - diff) / 2;
  return out;
}

Mat2 zyz_compose(const ZyzAngles& a) {
  return std::polar(1.0, a.alpha) * mat2::rz(a.beta) * mat2::ry(a.gamma) *
         mat2::rz(a.delta);
}

Mat2 sqrt_unitary(const Mat2& u) {
  Eigen::ComplexEigenSolver<Mat2> es(u);
  // Unitary matrices are normal, but degenerate eigenvalues can leave the
  // eigenvectors non-orthogonal; orthonormalize through a QR step.
  Mat2 vecs = es.eigenvectors();
  Eigen::HouseholderQR<Mat2> qr(vecs);
  Mat2 q = qr.householderQ();
  Mat2 d = q.adjoint() * u * q;
  Mat2 root = Mat2::Zero();
  root(0, 0) = std::sqrt(d(0, 0));
  root(1, 1) = std::sqrt(d(1, 1));
  return q * root * q.adjoint();
}

bool equal_up_to_global_phase(const MatX& a, const MatX& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  // Align phases on the entry of largest magnitude.
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) < tol) return a.cwiseAbs().maxCoeff() < tol;
  const cplx ratio = a(r, c) / b(r, c);
  if (std::abs(std::abs(ratio) - 1.0) > tol) return false;
  const cplx ph = ratio / std::abs(ratio);
  return (a - ph * b).cwiseAbs().maxCoeff() < tol;
}

double max_abs_diff(const MatX& a, const MatX& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace midselect
