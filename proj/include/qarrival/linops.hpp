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

#include <Eigen/Dense>
#include <complex>

#include "qarrival/errors.hpp"

namespace qarrival {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace linops {

inline constexpr double kDefaultConditionCap = 1e8;

// Eigen-triple of a generally non-normal matrix. Eigenvalues are sorted by
// imaginary part descending, then real part ascending, and eigenvector
// columns carry unit norm with a fixed phase, so downstream closed-form
// sums are reproducible run to run.
struct SpectralFactorization {
  Eigen::VectorXcd eigenvalues;
  Matrix right_vectors;     // V, columns are right eigenvectors
  Matrix inverse_vectors;   // V^{-1}
  double condition = 1.0;   // ||V|| ||V^{-1}|| >= 1
};

// Throws DefectiveMatrix when the eigenvector condition number exceeds the
// cap or the reconstruction residual is out of tolerance; callers fall back
// to ODE propagation in that case.
SpectralFactorization spectral_factorize(const Matrix& m,
                                         double condition_cap = kDefaultConditionCap);

// Hermitian square root of a PSD matrix. Eigenvalues slightly below zero
// (roundoff from outer-product construction) are clamped to zero; anything
// below -1e-8 relative scale is a genuine violation.
Matrix psd_sqrt(const Matrix& a);

// Sum of singular values.
double trace_norm(const Matrix& x);

// Largest singular value.
double operator_norm(const Matrix& x);

bool is_hermitian(const Matrix& m, double rel_tol = 1e-12);

void require_square_finite(const Matrix& m, const char* what);

// Normalized state; the constructor rejects vectors whose Euclidean norm
// deviates from 1 by more than 1e-12.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  // Rescales to unit norm first (throws on a zero vector).
  static StateVector normalized(Vector amplitudes);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  Vector amplitudes_;
};

}  // namespace linops
}  // namespace qarrival
