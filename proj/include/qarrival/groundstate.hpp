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

#include <vector>

#include "qarrival/linops.hpp"

namespace qarrival::groundstate {

// Uniform grid of n interior points; the endpoints carry Dirichlet zeros.
struct Grid {
  double t_min = 0.0;
  double t_max = 0.0;
  int n = 0;

  double spacing() const { return (t_max - t_min) / (n + 1); }
};

// Lowest k eigenvalues of the central-difference discretization of
// -d^2/dt^2 + t^2 on a symmetric grid; they approach 2n+1 as spacing -> 0.
// Throws GridTooCoarse when Richardson extrapolation over h, h/2 moves an
// eigenvalue by more than 1e-2.
std::vector<double> oscillator_spectrum(const Grid& grid, int k);

// Lowest k eigenvalues of -d^2/dt^2 + t on [0, t_max] with Dirichlet walls;
// they approach the negated Airy zeros -Z_n.
std::vector<double> wall_linear_spectrum(const Grid& grid, int k);

struct RefinedSpectrum {
  std::vector<double> raw;       // at the given spacing h
  std::vector<double> refined;   // Richardson over h, h/2
};

RefinedSpectrum oscillator_spectrum_refined(const Grid& grid, int k);
RefinedSpectrum wall_linear_spectrum_refined(const Grid& grid, int k);

// Ground eigenvector of the wall problem, normalized so that
// h * sum v_i^2 = 1 (so v_i approximates the continuum eigenfunction).
Eigen::VectorXd wall_linear_ground_vector(const Grid& grid);

// Both sides of the gapped-ground-state estimates: the trace-norm bound
// |rho - phi0><phi0|_1 <= 2 sqrt(alpha/(a1-a0)) and the fidelity bound
// 1 - <phi0|rho|phi0> <= alpha/(a1-a0), with alpha = tr(rho A) - a0.
struct GapLemmaReport {
  double a0 = 0.0;
  double a1 = 0.0;
  double alpha = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double fidelity_deficit = 0.0;
  bool holds = false;
};

GapLemmaReport gap_lemma_check(const Matrix& a, const Matrix& rho);

}  // namespace qarrival::groundstate
