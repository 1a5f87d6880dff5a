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

#include "qarrival/minimality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "qarrival/errors.hpp"
#include "qarrival/numerics.hpp"

namespace qarrival::minimality {

namespace {

struct AirySquared {
  double z1;          // first negative zero
  double normalizer;  // Ai'(Z1)^2, verified against the quadrature value
};

const AirySquared& airy_squared() {
  static const AirySquared cached = [] {
    AirySquared a;
    a.z1 = airy_negative_zeros(1)[0];
    const double aip = airy(a.z1).ai_prime;
    a.normalizer = aip * aip;
    const auto q = numerics::integrate(
        [&a](double s) {
          const double v = airy(s + a.z1).ai;
          return v * v;
        },
        0.0, 40.0, 1e-13, 1e-12);
    if (std::abs(q.value - a.normalizer) > 1e-10)
      throw Error("minimality: Ai'(Z1)^2 normalizer failed its quadrature check");
    return a;
  }();
  return cached;
}

double unit_density(Kind kind, double s) {
  if (kind == Kind::gaussian)
    return std::exp(-0.5 * s * s) / std::sqrt(2.0 * std::numbers::pi);
  if (s < 0.0) return 0.0;
  const AirySquared& a = airy_squared();
  const double x = s + a.z1;
  if (x >= 49.0) return 0.0;   // below double underflow once squared
  const double v = airy(x).ai;
  return v * v / a.normalizer;
}

// Cumulative mass of the unit density below s (gaussian analytic, airy by a
// cached cumulative-trapezoid table).
double unit_cdf(Kind kind, double s) {
  if (kind == Kind::gaussian)
    return 0.5 * std::erfc(-s / std::numbers::sqrt2);
  constexpr int n = 4800;
  constexpr double s_max = 24.0;
  static const std::vector<double> table = [] {
    std::vector<double> cum(n + 1, 0.0);
    double prev = unit_density(Kind::airy, 0.0);
    for (int i = 1; i <= n; ++i) {
      const double cur = unit_density(Kind::airy, i * s_max / n);
      cum[i] = cum[i - 1] + 0.5 * (prev + cur) * (s_max / n);
      prev = cur;
    }
    return cum;
  }();
  if (s <= 0.0) return 0.0;
  if (s >= s_max) return 1.0;
  const double u = s / s_max * n;
  const int i = static_cast<int>(u);
  const double w = u - i;
  return (1.0 - w) * table[i] + w * table[i + 1];
}

}  // namespace

const Constants& constants() {
  static const Constants cached = [] {
    const auto zeros = airy_negative_zeros(2);
    Constants c;
    c.y0 = -zeros[0];
    c.y1 = -zeros[1];
    c.C = 2.0 * std::pow(c.y0 / 3.0, 1.5);
    c.gamma_airy = 2.0 * std::sqrt(2.0 * c.y0 / (3.0 * (c.y1 - c.y0)));
    c.gamma_gauss = std::numbers::sqrt2;
    c.x0 = 1.0;
    return c;
  }();
  return cached;
}

const UnitMoments& unit_moments(Kind kind) {
  static const UnitMoments gauss{0.0, 1.0};
  static const UnitMoments airy_m = [] {
    const auto m1 = numerics::integrate(
        [](double s) { return s * unit_density(Kind::airy, s); }, 0.0, 40.0,
        1e-12, 1e-11);
    const auto m2 = numerics::integrate(
        [](double s) { return s * s * unit_density(Kind::airy, s); }, 0.0,
        40.0, 1e-12, 1e-11);
    return UnitMoments{m1.value, std::sqrt(m2.value - m1.value * m1.value)};
  }();
  return kind == Kind::gaussian ? gauss : airy_m;
}

double minimal_density(Kind kind, double lambda, double tau, double t) {
  if (!(lambda > 0.0))
    throw NonpositiveScale("minimal_density: lambda must be positive");
  return lambda * unit_density(kind, lambda * (t - tau));
}

namespace {

// Dense tables drive the Nelder-Mead objective; the reported distance is
// re-evaluated at the optimum by adaptive quadrature of the exact densities.
struct FitWorkspace {
  std::vector<double> t;
  std::vector<double> p;
  double dt;
};

FitWorkspace tabulate(const DensityTarget& target, double t_hi) {
  constexpr int n = 4000;
  FitWorkspace w;
  w.dt = t_hi / n;
  w.t.resize(n + 1);
  w.p.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    w.t[i] = i * w.dt;
    w.p[i] = target.density(w.t[i]);
  }
  return w;
}

// L1 distance on [0, inf): fitted mass past the table window still counts,
// mass the fit leaks to t < 0 does not (the distance lives on t >= 0).
double table_distance(const FitWorkspace& w, Kind kind, double lambda,
                      double tau) {
  double acc = 0.0;
  for (std::size_t i = 0; i < w.t.size(); ++i) {
    const double diff =
        std::abs(w.p[i] - lambda * unit_density(kind, lambda * (w.t[i] - tau)));
    acc += (i == 0 || i + 1 == w.t.size()) ? 0.5 * diff : diff;
  }
  const double above = 1.0 - unit_cdf(kind, lambda * (w.t.back() - tau));
  return acc * w.dt + above;
}

}  // namespace

MinimalFit fit_minimal(const DensityTarget& target, Kind kind, double epsilon,
                       const FitOptions& options) {
  const UnitMoments& um = unit_moments(kind);
  const double sigma = std::max(target.stddev, 1e-12);
  const double lambda0 = std::max(um.stddev, 1e-3) / sigma;
  const double tau0 = target.mean - um.mean / lambda0;

  const double tau_lo = -10.0 * sigma;
  const double tau_hi = target.mean + 10.0 * sigma;
  // moment-sized window: a tail-decay horizon would starve the table of
  // resolution where the mass actually sits
  const double t_hi = target.mean + 14.0 * sigma;
  const FitWorkspace w = tabulate(target, t_hi);

  const auto objective = [&](const std::vector<double>& x) {
    const double lambda = std::exp(x[0]);
    double tau = x[1];
    double penalty = 0.0;
    if (tau < tau_lo) { penalty = 10.0 * (tau_lo - tau); tau = tau_lo; }
    if (tau > tau_hi) { penalty = 10.0 * (tau - tau_hi); tau = tau_hi; }
    return table_distance(w, kind, lambda, tau) + penalty;
  };

  const std::vector<std::vector<double>> starts = {
      {std::log(lambda0), tau0},
      {std::log(lambda0) + 0.4, tau0},
      {std::log(lambda0) - 0.4, tau0},
      {std::log(lambda0), tau0 + 0.75 * sigma},
      {std::log(lambda0), tau0 - 0.75 * sigma},
  };

  bool have_best = false;
  numerics::SimplexResult best;
  const int restarts = std::clamp(options.restarts, 1,
                                  static_cast<int>(starts.size()));
  for (int i = 0; i < restarts; ++i) {
    auto r = numerics::nelder_mead(objective, starts[i],
                                   {0.2, 0.4 * sigma}, options.distance_tol,
                                   options.max_iterations);
    if (!r.converged) continue;
    // stop once a later restart fails to improve on the best distance;
    // ties break toward the smaller scale
    const bool stable =
        have_best && r.value > best.value - options.distance_tol;
    const bool better =
        !have_best || r.value < best.value - 1e-12 ||
        (std::abs(r.value - best.value) <= 1e-12 && r.x[0] < best.x[0]);
    if (better) best = std::move(r);
    have_best = true;
    if (stable) break;
  }
  if (!have_best)
    throw OptimizerFailed("fit_minimal: no Nelder-Mead restart converged");

  MinimalFit fit;
  fit.kind = kind;
  fit.scale = std::exp(best.x[0]);
  fit.shift = std::clamp(best.x[1], tau_lo, tau_hi);
  const double edge_tol = 1e-9 + 1e-6 * sigma;
  fit.boundary_hit = fit.shift - tau_lo < edge_tol || tau_hi - fit.shift < edge_tol;
  fit.epsilon = epsilon;
  fit.bound = (kind == Kind::gaussian ? constants().gamma_gauss
                                      : constants().gamma_airy) *
              std::sqrt(std::max(epsilon, 0.0));

  const double lambda = fit.scale;
  const double tau = fit.shift;
  const auto exact = numerics::integrate(
      [&](double t) {
        return std::abs(target.density(t) -
                        lambda * unit_density(kind, lambda * (t - tau)));
      },
      0.0, t_hi, 1e-9, 1e-8, 40);
  fit.distance = exact.value + 1.0 - unit_cdf(kind, lambda * (t_hi - tau));
  return fit;
}

}  // namespace qarrival::minimality
