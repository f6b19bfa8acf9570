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

#include <complex>

#include <Eigen/Dense>

namespace midselect {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using MatX = Eigen::MatrixXcd;
using VecX = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

namespace mat2 {

Mat2 identity();
Mat2 x();
Mat2 y();
Mat2 z();
Mat2 h();
Mat2 s();
Mat2 t();
/// exp(-i θ X / 2)
Mat2 rx(double theta);
/// exp(-i θ Y / 2)
Mat2 ry(double theta);
/// exp(-i θ Z / 2)
Mat2 rz(double theta);
/// diag(1, e^{iφ})
Mat2 phase(double phi);

}  // namespace mat2

bool is_unitary(const Mat2& u, double tol = 1e-12);

/// u = e^{iα} Rz(β) Ry(γ) Rz(δ).
struct ZyzAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
};

ZyzAngles zyz_decompose(const Mat2& u);
Mat2 zyz_compose(const ZyzAngles& a);

/// Principal square root of a 2x2 unitary; the result is unitary and squares to u.
Mat2 sqrt_unitary(const Mat2& u);

/// True when a = e^{iθ} b for some θ, compared entrywise in max-norm.
bool equal_up_to_global_phase(const MatX& a, const MatX& b, double tol);

double max_abs_diff(const MatX& a, const MatX& b);

}  // namespace midselect
