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

#include "qarrival/linops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace qarrival::linops {

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw DimensionMismatch(std::string(what) + ": matrix must be square and non-empty");
  if (!m.allFinite())
    throw Error(std::string(what) + ": matrix has non-finite entries");
}

bool is_hermitian(const Matrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  // relative to the matrix's own scale so SI-sized entries work too
  return (m - m.adjoint()).norm() <= rel_tol * m.norm();
}

double operator_norm(const Matrix& x) {
  return Eigen::JacobiSVD<Matrix>(x).singularValues()(0);
}

double trace_norm(const Matrix& x) {
  require_square_finite(x, "trace_norm");
  return Eigen::JacobiSVD<Matrix>(x).singularValues().sum();
}

SpectralFactorization spectral_factorize(const Matrix& m, double condition_cap) {
  require_square_finite(m, "spectral_factorize");
  const auto n = m.rows();

  Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success)
    throw DefectiveMatrix("spectral_factorize: eigensolver did not converge");

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto& raw = solver.eigenvalues();
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (raw(a).imag() != raw(b).imag()) return raw(a).imag() > raw(b).imag();
    return raw(a).real() < raw(b).real();
  });

  SpectralFactorization fact;
  fact.eigenvalues.resize(n);
  fact.right_vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    fact.eigenvalues(i) = raw(order[i]);
    Vector v = solver.eigenvectors().col(order[i]);
    v /= v.norm();
    // fix the phase: the largest component becomes real positive
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    const Complex z = v(imax);
    v *= std::conj(z) / std::abs(z);
    fact.right_vectors.col(i) = v;
  }

  const Eigen::JacobiSVD<Matrix> svd(fact.right_vectors);
  const double smin = svd.singularValues()(n - 1);
  const double smax = svd.singularValues()(0);
  fact.condition = (smin > 0.0) ? smax / smin
                                : std::numeric_limits<double>::infinity();
  if (!(fact.condition <= condition_cap))
    throw DefectiveMatrix(
        "spectral_factorize: eigenvector condition " + std::to_string(fact.condition) +
        " exceeds cap; matrix is defective or near-defective");

  fact.inverse_vectors = fact.right_vectors.partialPivLu().inverse();

  const Matrix rebuilt = fact.right_vectors *
                         fact.eigenvalues.asDiagonal() * fact.inverse_vectors;
  const double residual = (rebuilt - m).norm();
  if (residual > 1e-10 * fact.condition * m.norm())
    throw DefectiveMatrix("spectral_factorize: reconstruction residual " +
                          std::to_string(residual) + " out of tolerance");
  return fact;
}

Matrix psd_sqrt(const Matrix& a) {
  require_square_finite(a, "psd_sqrt");
  if (!is_hermitian(a))
    throw NotPositive("psd_sqrt: input is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  if (es.info() != Eigen::Success)
    throw Error("psd_sqrt: eigensolver did not converge");

  Eigen::VectorXd w = es.eigenvalues();
  const double scale =
      std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
  Eigen::VectorXd s(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w(i) < -1e-8 * scale)
      throw NotPositive("psd_sqrt: eigenvalue " + std::to_string(w(i)) +
                        " is negative beyond tolerance");
    s(i) = std::sqrt(std::max(w(i), 0.0));
  }
  Matrix root = es.eigenvectors() * s.asDiagonal() *
                es.eigenvectors().adjoint();
  return 0.5 * (root + Matrix(root.adjoint()));
}

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0)
    throw DimensionMismatch("StateVector: empty amplitude vector");
  if (!amplitudes_.allFinite())
    throw Error("StateVector: non-finite amplitudes");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12)
    throw Error("StateVector: norm deviates from 1 beyond 1e-12");
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0))
    throw Error("StateVector::normalized: zero or non-finite vector");
  return StateVector(amplitudes / n);
}

}  // namespace qarrival::linops
