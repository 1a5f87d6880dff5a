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

#include "qarrival/arrival.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qarrival/numerics.hpp"

namespace qarrival::arrival {

namespace {

// Eigen-expansion of S(t) = sum_{jk} G_jk exp(mu_jk t) with
// G_jk = conj(c_j) c_k <v_j|v_k> and mu_jk = i (conj(l_j) - l_k)/hbar.
// Terms split into a constant part (pairs of equal real eigenvalues,
// summing to 1-p) and decaying terms with Re mu < 0. Oscillatory pairs of
// distinct real eigenvalues carry provably zero weight; nonzero weight
// there, or a decay rate below threshold, poisons the moments.
struct PairExpansion {
  std::vector<Complex> coeff;
  std::vector<Complex> rate;
  double s_inf = 0.0;
  double p = 0.0;
  bool moments_divergent = false;
  double slowest_rate = 0.0;   // over terms with non-negligible weight

  double survival(double t) const {
    double s = s_inf;
    for (std::size_t i = 0; i < coeff.size(); ++i)
      s += (coeff[i] * std::exp(rate[i] * t)).real();
    return s;
  }
};

PairExpansion build_expansion(const AbsorptiveSystem& sys,
                              const linops::StateVector& psi) {
  const auto& fact = sys.factorization();
  if (!fact)
    throw DefectiveMatrix(
        "moment: closed form requires a spectral factorization; "
        "this system runs in ODE fallback");
  const auto n = sys.dim();
  const Vector c = fact->inverse_vectors * psi.amplitudes();
  const Matrix gram = fact->right_vectors.adjoint() * fact->right_vectors;

  const double rate_scale = std::max(sys.generator_norm(), 1e-300) / sys.hbar();
  const double rate_tol = 1e-12 * rate_scale;

  PairExpansion ex;
  double total_weight = 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      total_weight += std::abs(std::conj(c(j)) * c(k) * gram(j, k));

  // Decay rates below rate_floor are indistinguishable from eigensolver
  // roundoff and treated as exactly real; rates between the floor and
  // rate_tol are too slow to trust any moment.
  const double rate_floor = 1e-14 * rate_scale;
  const double weight_tol = 1e-10 * std::max(total_weight, 1.0);

  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Complex g = std::conj(c(j)) * c(k) * gram(j, k);
      const Complex mu = Complex(0.0, 1.0) *
                         (std::conj(fact->eigenvalues(j)) - fact->eigenvalues(k)) /
                         sys.hbar();
      if (mu.real() < -rate_tol) {
        ex.coeff.push_back(g);
        ex.rate.push_back(mu);
        if (std::abs(g) > weight_tol)
          ex.slowest_rate = (ex.slowest_rate == 0.0)
                                ? -mu.real()
                                : std::min(ex.slowest_rate, -mu.real());
      } else if (std::abs(mu) <= rate_tol) {
        ex.s_inf += g.real();
        if (-mu.real() > rate_floor && std::abs(g) > weight_tol)
          ex.moments_divergent = true;
      } else {
        // oscillatory pair with sub-threshold decay; its weight is provably
        // zero, so anything visible marks an untrustworthy closed form
        if (std::abs(g) > weight_tol) ex.moments_divergent = true;
        if (mu.real() < 0.0) {
          ex.coeff.push_back(g);
          ex.rate.push_back(mu);
        }
      }
    }
  }
  ex.p = 1.0 - ex.s_inf;
  return ex;
}

double require_p(const AbsorptiveSystem& sys, const linops::StateVector& psi) {
  const double p = absorption_probability(sys, psi);
  if (p < 1e-12)
    throw ZeroAbsorption("arrival: total absorption probability is zero");
  return p;
}

double closed_form_moment(const PairExpansion& ex, int n) {
  if (ex.moments_divergent)
    throw DivergentMoment(
        "moment: a decay rate below 1e-12 of the natural scale makes "
        "<T^n> untrustworthy");
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  Complex sum = 0.0;
  for (std::size_t i = 0; i < ex.coeff.size(); ++i) {
    Complex pow = 1.0;
    for (int m = 0; m < n; ++m) pow *= -ex.rate[i];
    sum += ex.coeff[i] / pow;
  }
  return factorial * sum.real() / ex.p;
}

}  // namespace

double horizon_time(const AbsorptiveSystem& sys,
                    const linops::StateVector& psi) {
  const double p = require_p(sys, psi);
  const double t_unit = sys.hbar() / std::max(sys.generator_norm(), 1e-300);
  // the cap in natural units also respects the slowest relevant decay mode
  double t_conv = t_unit;
  if (sys.factorization()) {
    const PairExpansion ex = build_expansion(sys, psi);
    if (ex.slowest_rate > 0.0)
      t_conv = std::max(t_conv, 1.0 / ex.slowest_rate);
  }
  const double cap = 1e6 * t_conv;
  double t = t_unit;
  while (survival(sys, psi, t) - (1.0 - p) >= 1e-12) {
    t *= 2.0;
    if (t > cap)
      throw DivergentMoment("horizon_time: survival tail has not decayed at "
                            "the 1e6 natural-unit cap");
  }
  return t;
}

double density(const AbsorptiveSystem& sys, const linops::StateVector& psi,
               double t) {
  const double p = require_p(sys, psi);
  return dilation_trajectory(sys, psi, t).squaredNorm() / p;
}

double moment(const AbsorptiveSystem& sys, const linops::StateVector& psi,
              int n, Method method, double quad_rel_tol) {
  if (n != 1 && n != 2)
    throw Error("moment: only n = 1 and n = 2 are supported");
  if (method == Method::closed_form) {
    const PairExpansion ex = build_expansion(sys, psi);
    if (ex.moments_divergent)
      throw DivergentMoment(
          "moment: a decay rate below 1e-12 of the natural scale makes "
          "<T^n> untrustworthy");
    if (ex.p < 1e-12)
      throw ZeroAbsorption("moment: total absorption probability is zero");
    return closed_form_moment(ex, n);
  }

  const double p = require_p(sys, psi);
  const double t_hi = horizon_time(sys, psi);

  // Integration by parts of t^n P(t): moments from the survival tail, which
  // avoids differentiating S numerically.
  std::function<double(double)> tail;
  if (sys.factorization()) {
    const PairExpansion ex = build_expansion(sys, psi);
    tail = [ex, p](double t) { return ex.survival(t) - (1.0 - p); };
  } else {
    tail = [&sys, &psi, p](double t) {
      return survival(sys, psi, t) - (1.0 - p);
    };
  }
  // <T^n> = (n/p) Int t^{n-1} (S(t) - (1-p)) dt; the n factor is folded
  // into the integrand.
  const auto integrand = [&tail, n](double t) {
    return (n == 1) ? tail(t) : 2.0 * t * tail(t);
  };
  const auto q = numerics::integrate(integrand, 0.0, t_hi, 1e-13, quad_rel_tol);
  if (!q.converged)
    throw DivergentMoment(
        "moment: quadrature exhausted its refinement budget before reaching "
        "tolerance; the survival tail is too slow to integrate reliably");
  return q.value / p;
}

EnergyStats energy_stats(const AbsorptiveSystem& sys,
                         const linops::StateVector& psi) {
  const Vector& v = psi.amplitudes();
  const Vector hv = sys.hamiltonian() * v;
  const double mean = v.dot(hv).real();
  const double second = hv.squaredNorm();
  return {mean, std::sqrt(std::max(second - mean * mean, 0.0))};
}

ArrivalStats uncertainty_report(const AbsorptiveSystem& sys,
                                const linops::StateVector& psi,
                                Method method, double quad_rel_tol) {
  ArrivalStats stats;
  stats.method = method;

  const double d_psi = (sys.absorber() * psi.amplitudes()).norm();
  stats.assumption_holds = d_psi <= 1e-10 * sys.absorber_norm();

  stats.p = require_p(sys, psi);
  stats.mean_time = moment(sys, psi, 1, method, quad_rel_tol);
  stats.second_moment = moment(sys, psi, 2, method, quad_rel_tol);
  stats.std_time = std::sqrt(
      std::max(stats.second_moment - stats.mean_time * stats.mean_time, 0.0));

  const EnergyStats es = energy_stats(sys, psi);
  stats.mean_energy = es.mean;
  stats.std_energy = es.stddev;

  const double sqrt_p = std::sqrt(stats.p);
  const double hbar = sys.hbar();
  stats.ratio_var = stats.std_time * stats.std_energy / (sqrt_p * hbar / 2.0);
  stats.ratio_mean = stats.mean_time * stats.std_energy /
                     (minimality::constants().C * sqrt_p * hbar);

  if (stats.assumption_holds)
    stats.relation_violation =
        !(stats.ratio_var > 1.0) || stats.ratio_mean < 1.0 - 1e-9;
  return stats;
}

minimality::MinimalFit fit_minimal_report(const AbsorptiveSystem& sys,
                                          const linops::StateVector& psi,
                                          minimality::Kind kind,
                                          const ArrivalStats& stats,
                                          const minimality::FitOptions& options) {
  const double epsilon =
      std::max((kind == minimality::Kind::gaussian ? stats.ratio_var
                                                   : stats.ratio_mean) -
                   1.0,
               0.0);
  minimality::DensityTarget target;
  target.density = [&sys, &psi](double t) { return density(sys, psi, t); };
  target.mean = stats.mean_time;
  target.stddev = stats.std_time;
  return minimality::fit_minimal(target, kind, epsilon, options);
}

}  // namespace qarrival::arrival
