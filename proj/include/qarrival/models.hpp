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

#include <cmath>
#include <cstdint>
#include <vector>

#include "qarrival/absorption.hpp"

namespace qarrival::models {

struct PreparedSystem {
  AbsorptiveSystem system;
  linops::StateVector psi;
};

// H = (hbar/2) [[0, omega], [omega, 0]], D = (hbar/2) diag(0, gamma),
// psi = (1, 0); D psi = 0 holds by construction.
PreparedSystem two_level(double omega, double gamma, double hbar = 1.0);

// D = hbar * alpha * identity, so S(t) = exp(-2 alpha t) for every state.
// D psi = 0 fails for every psi; this model exists for the negative tests.
AbsorptiveSystem constant_absorber(const Matrix& hamiltonian, double alpha,
                                   double hbar = 1.0);

// Driven three-step ion scheme reduced to an effective two-level system:
// level 2 decays at gamma = |omega23|^2 / gamma34 after adiabatic
// elimination of level 3, valid while |omega23| <= gamma34 / 5.
struct IonScheme {
  double omega12 = 0.0;   // rad/s
  double omega23 = 0.0;   // rad/s
  double gamma34 = 0.0;   // rad/s
  double q = 1.0;         // detection efficiency

  double effective_gamma() const { return omega23 * omega23 / gamma34; }
  bool valid() const {
    return omega12 > 0.0 && omega23 > 0.0 && gamma34 > 0.0 && q > 0.0 &&
           q <= 1.0 && std::abs(omega23) <= gamma34 / 5.0;
  }
};

PreparedSystem ion_effective(const IonScheme& scheme, double hbar = 1.0);

// Random Hermitian H (Gaussian ensemble), rank (dim - kernel_dim) PSD D
// from weighted outer products, and psi drawn inside ker(D); reproducible
// from the seed.
PreparedSystem random_system(int dim, int kernel_dim, std::uint64_t seed);

struct SampleSet {
  std::vector<double> arrival_times;   // sorted clicks
  long long no_click_count = 0;
  std::uint64_t seed = 0;
  long long n_requested = 0;
};

// First-jump sampling for the pure-loss semigroup: invert S(t) = 1 - u by
// bracketed root finding, then thin clicks with probability q. Splits n
// over fixed substreams so the output is independent of scheduling.
SampleSet quantum_jump_sample(const AbsorptiveSystem& sys,
                              const linops::StateVector& psi, long long n,
                              double q, std::uint64_t seed, double t_max);

struct KsResult {
  enum class Verdict { pass, fail, inconclusive };
  double statistic = 0.0;
  double critical = 0.0;
  long long n_clicks = 0;
  Verdict verdict = Verdict::inconclusive;
};

// One-sample Kolmogorov-Smirnov test of the clicks against the analytic
// conditional CDF (1 - S(t))/p; inconclusive below min_clicks samples.
KsResult ks_against_density(const AbsorptiveSystem& sys,
                            const linops::StateVector& psi,
                            const SampleSet& samples, double alpha = 0.01,
                            long long min_clicks = 1000);

}  // namespace qarrival::models
