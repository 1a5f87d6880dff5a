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

#include <memory>
#include <optional>

#include "qarrival/linops.hpp"

namespace qarrival {

// R = lim_{t->inf} B_t^* B_t, the part of state space the detector never sees.
struct AsymptoticOperator {
  Matrix r;
  bool converged = false;
  double horizon = 0.0;   // time at which convergence was declared
};

// Hermitian generator H, positive absorber D, and K = H - iD. Immutable
// after construction; all member data may be shared across threads.
class AbsorptiveSystem {
 public:
  AbsorptiveSystem(Matrix hamiltonian, Matrix absorber, double hbar = 1.0);

  Eigen::Index dim() const { return h_.rows(); }
  double hbar() const { return hbar_; }
  const Matrix& hamiltonian() const { return h_; }
  const Matrix& absorber() const { return d_; }
  const Matrix& absorber_sqrt() const { return d_sqrt_; }
  const Matrix& generator() const { return k_; }
  double generator_norm() const { return k_norm_; }   // ||K||, sets time scale
  double absorber_norm() const { return d_norm_; }

  // Factorization of K when K is well-conditioned; empty means the system
  // propagates by adaptive Runge-Kutta instead.
  const std::optional<linops::SpectralFactorization>& factorization() const {
    return factorization_;
  }
  bool ode_fallback() const { return !factorization_.has_value(); }

  // Cached asymptotic operator; computed on first use (thread-safe).
  const AsymptoticOperator& asymptotic(double horizon_cap_natural = 1e6) const;

 private:
  Matrix h_, d_, k_, d_sqrt_;
  double hbar_ = 1.0;
  double k_norm_ = 0.0;
  double d_norm_ = 0.0;
  std::optional<linops::SpectralFactorization> factorization_;
  struct RCache;
  std::shared_ptr<RCache> r_cache_;
};

AbsorptiveSystem make_system(Matrix hamiltonian, Matrix absorber,
                             double hbar = 1.0);

// B_t = exp(-i K t / hbar) as a matrix, t >= 0.
Matrix propagator(const AbsorptiveSystem& sys, double t);

// B_t applied to an arbitrary vector (not necessarily normalized).
Vector evolve(const AbsorptiveSystem& sys, const Vector& psi, double t);

// S(t) = ||B_t psi||^2.
double survival(const AbsorptiveSystem& sys, const linops::StateVector& psi,
                double t);

// Computes R by two routes that must agree: the semigroup limit at doubled
// horizons and, when a factorization exists, the algebraic limit supported
// on the real-spectrum eigenmodes.
AsymptoticOperator asymptotic_operator(const AbsorptiveSystem& sys,
                                       double horizon_cap_natural = 1e6);

// p = <psi| (1 - R) psi>, cross-checked against 1 - S at the horizon.
double absorption_probability(const AbsorptiveSystem& sys,
                              const linops::StateVector& psi);

// (J psi)(t) = sqrt(2/hbar) D^{1/2} B_t psi; its squared norm is -dS/dt.
Vector dilation_trajectory(const AbsorptiveSystem& sys,
                           const linops::StateVector& psi, double t);

// C(t): Fourier transform of the dilated energy distribution,
// (1/p) <psi|(1-R) B_t psi> for t >= 0 and (1/p) <B_{-t} psi|(1-R) psi> below.
Complex characteristic_function(const AbsorptiveSystem& sys,
                                const linops::StateVector& psi, double t,
                                const AsymptoticOperator& r);

}  // namespace qarrival
