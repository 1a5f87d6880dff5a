// Copyright 2026 The qarrival Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <vector>

namespace qarrival::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;   // accumulated local error estimate
  bool converged = true;
};

// Adaptive Gauss-Kronrod (G7, K15) on [a, b]. Subdivides until the local
// estimate meets max(abs_tol, rel_tol * |integral|) or max_depth is hit.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-10, int max_depth = 48);

// Root of f on a bracketing interval [a, b] (f(a) and f(b) of opposite sign).
double brent_root(const std::function<double(double)>& f, double a, double b,
                  double x_tol = 1e-13, int max_iter = 200);

struct ScalarMin {
  double x = 0.0;
  double value = 0.0;
};

// Golden-section minimum of a unimodal function on [a, b].
ScalarMin golden_section_min(const std::function<double(double)>& f, double a,
                             double b, double x_tol = 1e-10,
                             int max_iter = 500);

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  int evaluations = 0;
};

// Nelder-Mead with standard reflection/expansion/contraction coefficients.
// Converges when the simplex function values spread below f_tol.
SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const std::vector<double>& step,
    double f_tol = 1e-10, int max_iter = 2000);

}  // namespace qarrival::numerics
