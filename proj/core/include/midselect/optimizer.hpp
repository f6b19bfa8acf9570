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

#include <functional>
#include <string>
#include <vector>

namespace midselect {

struct OptimizeOptions {
  double lower = 0.0;
  double upper = 6.283185307179586;
  /// Central finite-difference step.
  double fd_step = 1e-6;
  /// Stop when (f_k - f_{k+1}) / max(|f_k|, |f_{k+1}|, 1) <= ftol.
  double ftol = 1e-8;
  /// Stop when the projected gradient's max-norm drops below pgtol.
  double pgtol = 1e-5;
  int max_iterations = 200;
  int max_evaluations = 20000;
  /// Number of stored curvature pairs.
  int history = 10;
};

struct OptimizeResult {
  std::vector<double> x;
  double f = 0;
  /// Objective after each accepted iteration; trace[0] is the starting value.
  std::vector<double> trace;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string message;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Box-constrained limited-memory BFGS: two-loop recursion on the free
/// variables, projection onto the box, Armijo backtracking along the projected
/// path. Gradients come from central differences (one-sided at the bounds).
/// Deterministic for a deterministic objective.
OptimizeResult minimize_box(const Objective& f, std::vector<double> x0,
                            const OptimizeOptions& opts = {});

}  // namespace midselect
