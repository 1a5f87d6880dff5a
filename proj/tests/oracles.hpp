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

// Test-only oracles, kept independent of the implementation paths they
// check: Pade matrix exponentials for propagation, composite Simpson for
// integrals, a factorial-form Airy series, and finite-difference stencils.

#pragma once

#include <cmath>
#include <functional>

#include <unsupported/Eigen/MatrixFunctions>

#include "qarrival/linops.hpp"

namespace oracles {

// Pade scaling-and-squaring B_t = exp(-i K t / hbar); independent of both
// the eigendecomposition and the Runge-Kutta paths in the library.
inline qarrival::Matrix expm_propagator(const qarrival::Matrix& k, double hbar,
                                        double t) {
  const qarrival::Matrix a =
      qarrival::Complex(0.0, -t / hbar) * k;
  return a.exp();
}

// Composite Simpson on a fixed grid (n even).
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n = 4000) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// Maclaurin-series Airy value in the factorial form
//   Ai(x) = c1 sum 3^k (1/3)_k x^{3k}/(3k)! - c2 sum 3^k (2/3)_k x^{3k+1}/(3k+1)!
// with the leading constants from the gamma function. Long-double terms,
// usable as an oracle for |x| up to about 6.
inline long double airy_series_oracle(long double x) {
  const long double c1 =
      1.0L / (std::pow(3.0L, 2.0L / 3.0L) * std::tgammal(2.0L / 3.0L));
  const long double c2 =
      1.0L / (std::pow(3.0L, 1.0L / 3.0L) * std::tgammal(1.0L / 3.0L));
  long double f = 0.0L, g = 0.0L;
  for (int k = 0; k < 60; ++k) {
    long double poch1 = 1.0L, poch2 = 1.0L, fact3k = 1.0L, fact3k1 = 1.0L;
    for (int j = 0; j < k; ++j) {
      poch1 *= (1.0L / 3.0L + j);
      poch2 *= (2.0L / 3.0L + j);
    }
    for (int j = 2; j <= 3 * k; ++j) fact3k *= j;
    for (int j = 2; j <= 3 * k + 1; ++j) fact3k1 *= j;
    f += std::pow(3.0L, k) * poch1 * std::pow(x, 3.0L * k) / fact3k;
    g += std::pow(3.0L, k) * poch2 * std::pow(x, 3.0L * k + 1.0L) / fact3k1;
  }
  return c1 * f - c2 * g;
}

// Five-point central stencil for the second derivative.
inline double second_derivative(const std::function<double(double)>& f,
                                double x, double h) {
  return (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) -
          f(x + 2 * h)) /
         (12.0 * h * h);
}

// Fourth-order first-derivative stencil.
inline double first_derivative(const std::function<double(double)>& f,
                               double x, double h) {
  return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) /
         (12.0 * h);
}

}  // namespace oracles
