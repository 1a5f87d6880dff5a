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

#include "qarrival/airy.hpp"

namespace qarrival::minimality {

// Constants behind the uncertainty relations: C = 2 (-Z1/3)^{3/2} from the
// first Airy zero, the stability constants for the two minimal families,
// and the reference eigenvalues y0 = -Z1, y1 = -Z2, x0 = 1.
struct Constants {
  double C;
  double gamma_airy;
  double gamma_gauss;
  double x0;
  double y0;
  double y1;
};

const Constants& constants();

enum class Kind { gaussian, airy };

// lambda * P_min(lambda (t - tau)). The gaussian family is the standard
// normal density; the airy family is Ai(s + Z1)^2 / Ai'(Z1)^2 on s >= 0.
double minimal_density(Kind kind, double lambda, double tau, double t);

// Mean and standard deviation of the unit (lambda=1, tau=0) densities.
// The airy values come from quadrature at first use, which also verifies
// the Ai'(Z1)^2 normalizer to 1e-10.
struct UnitMoments {
  double mean;
  double stddev;
};
const UnitMoments& unit_moments(Kind kind);

struct MinimalFit {
  Kind kind = Kind::gaussian;
  double scale = 0.0;       // lambda
  double shift = 0.0;       // tau
  double distance = 0.0;    // L1 distance on t >= 0
  double epsilon = 0.0;     // relation excess supplied by the caller
  double bound = 0.0;       // gamma sqrt(epsilon)
  bool boundary_hit = false;  // tau search-domain edge reached
};

// Normalized density on t >= 0 together with its moments, which seed the
// moment-matched starting points and size the integration window.
struct DensityTarget {
  std::function<double(double)> density;
  double mean = 0.0;
  double stddev = 1.0;
};

struct FitOptions {
  int restarts = 5;
  double distance_tol = 1e-6;
  int max_iterations = 400;
};

// Minimizes the L1 distance over (lambda, tau) by Nelder-Mead from
// moment-matched starts; the reported distance is re-evaluated by adaptive
// quadrature at the optimum.
MinimalFit fit_minimal(const DensityTarget& target, Kind kind, double epsilon,
                       const FitOptions& options = {});

}  // namespace qarrival::minimality
