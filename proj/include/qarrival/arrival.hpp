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

#include "qarrival/absorption.hpp"
#include "qarrival/minimality.hpp"

namespace qarrival::arrival {

enum class Method { closed_form, quadrature };

// Arrival-time and energy statistics with the two relation ratios
//   ratio_var  = dT dE / (sqrt(p) hbar / 2)
//   ratio_mean = <T> dE / (C sqrt(p) hbar).
// Both exceed 1 whenever the standing assumption D psi = 0 holds; a value
// at or below 1 beyond slack marks an implementation bug, not physics.
struct ArrivalStats {
  double p = 0.0;
  double mean_time = 0.0;       // <T>
  double second_moment = 0.0;   // <T^2>
  double std_time = 0.0;        // dT
  double mean_energy = 0.0;     // <H>
  double std_energy = 0.0;      // dE
  double ratio_var = 0.0;
  double ratio_mean = 0.0;
  Method method = Method::closed_form;
  bool assumption_holds = false;   // ||D psi|| <= 1e-10 ||D||
  bool relation_violation = false;
};

// P(t) = ||(J psi)(t)||^2 / p.
double density(const AbsorptiveSystem& sys, const linops::StateVector& psi,
               double t);

// <T^n> for n = 1 or 2, by eigen-expansion sums (closed_form) or adaptive
// integration of n t^{n-1} (S(t) - (1-p))/p (quadrature, at the given
// relative tolerance).
double moment(const AbsorptiveSystem& sys, const linops::StateVector& psi,
              int n, Method method, double quad_rel_tol = 1e-11);

struct EnergyStats {
  double mean = 0.0;
  double stddev = 0.0;
};

EnergyStats energy_stats(const AbsorptiveSystem& sys,
                         const linops::StateVector& psi);

ArrivalStats uncertainty_report(const AbsorptiveSystem& sys,
                                const linops::StateVector& psi,
                                Method method = Method::closed_form,
                                double quad_rel_tol = 1e-11);

// Smallest T (doubling search) with S(T) - (1-p) < 1e-12, capped at 1e6
// natural time units.
double horizon_time(const AbsorptiveSystem& sys,
                    const linops::StateVector& psi);

// Fits the minimal distribution of the given kind to this system's arrival
// density, taking epsilon from the matching relation of the report.
minimality::MinimalFit fit_minimal_report(
    const AbsorptiveSystem& sys, const linops::StateVector& psi,
    minimality::Kind kind, const ArrivalStats& stats,
    const minimality::FitOptions& options = {});

}  // namespace qarrival::arrival
