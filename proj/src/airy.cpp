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

#include "qarrival/airy.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qarrival/errors.hpp"

namespace qarrival::minimality {

namespace {

using LD = long double;

// Ai(0) = 3^{-2/3}/Gamma(2/3) and -Ai'(0) = 3^{-1/3}/Gamma(1/3)
constexpr LD kAi0 = 0.3550280538878172392600632L;
constexpr LD kAip0 = 0.2588194037928067984051836L;
constexpr LD kSqrtPi = 1.7724538509055160272981675L;

struct Pair {
  LD ai;
  LD aip;
};

// Maclaurin series Ai = c1 f - c2 g, term recurrences
//   f : t_k = t_{k-1} x^3 / (3k (3k-1))      g : t_k = t_{k-1} x^3 / (3k (3k+1))
//   f': t_k = t_{k-1} x^3 / (3(k-1)(3k-1))   g': t_k = t_{k-1} x^3 / (3k (3k-2))
// Extended precision keeps the cancellation between c1 f and c2 g harmless
// up to x = 6 on the positive side and x = -8 on the negative side.
Pair series(LD x) {
  const LD x3 = x * x * x;
  LD f = 1.0L, g = x, gp = 1.0L;
  LD tf = 1.0L, tg = x, tgp = 1.0L;
  LD fp = 0.5L * x * x, tfp = fp;
  for (int k = 1; k < 200; ++k) {
    tf *= x3 / (LD(3 * k) * LD(3 * k - 1));
    tg *= x3 / (LD(3 * k) * LD(3 * k + 1));
    tgp *= x3 / (LD(3 * k) * LD(3 * k - 2));
    if (k > 1) tfp *= x3 / (LD(3 * (k - 1)) * LD(3 * k - 1));
    f += tf;
    g += tg;
    gp += tgp;
    if (k > 1) fp += tfp;
    if (std::abs(tf) < 1e-25L * std::abs(f) &&
        std::abs(tg) < 1e-25L * (std::abs(g) + 1e-30L) && k > 4)
      break;
  }
  return {kAi0 * f - kAip0 * g, kAi0 * fp - kAip0 * gp};
}

// u_k / v_k coefficient pair in the standard asymptotic expansions,
// u_k = u_{k-1} (6k-1)(6k-3)(6k-5) / (216 k (2k-1)), v_k = u_k (6k+1)/(1-6k).
struct UV {
  LD u;
  LD v;
};

UV uv_step(const UV& prev, int k) {
  const LD u = prev.u * LD(6 * k - 1) * LD(6 * k - 3) * LD(6 * k - 5) /
               (216.0L * LD(k) * LD(2 * k - 1));
  return {u, u * LD(6 * k + 1) / LD(1 - 6 * k)};
}

// x >= 9: Ai ~ e^{-z}/(2 sqrt(pi) x^{1/4}) sum (-1)^k u_k z^{-k},
//        Ai' ~ -x^{1/4} e^{-z}/(2 sqrt(pi)) sum (-1)^k v_k z^{-k},
// truncated at the smallest term.
Pair asymptotic_positive(LD x) {
  const LD z = 2.0L / 3.0L * x * std::sqrt(x);
  LD sum_u = 1.0L, sum_v = 1.0L;
  UV c{1.0L, 1.0L};
  LD zk = 1.0L;
  LD last = 1.0L;
  for (int k = 1; k < 60; ++k) {
    c = uv_step(c, k);
    zk /= -z;
    const LD tu = c.u * zk;
    if (std::abs(tu) > last) break;   // divergence onset
    sum_u += tu;
    sum_v += c.v * zk;
    last = std::abs(tu);
    if (last < 1e-22L) break;
  }
  const LD x14 = std::pow(x, 0.25L);
  const LD pre = std::exp(-z) / (2.0L * kSqrtPi);
  return {pre / x14 * sum_u, -pre * x14 * sum_v};
}

// x <= -8, with X = -x and z = (2/3) X^{3/2}:
//  Ai(-X)  ~ (cos(z - pi/4) S_even(u) + sin(z - pi/4) S_odd(u)) / (sqrt(pi) X^{1/4})
//  Ai'(-X) ~ (sin(z - pi/4) S_even(v) - cos(z - pi/4) S_odd(v)) X^{1/4} / sqrt(pi)
// where S_even/S_odd split the alternating series over even and odd k.
Pair asymptotic_negative(LD x) {
  const LD X = -x;
  const LD z = 2.0L / 3.0L * X * std::sqrt(X);
  LD ue = 1.0L, uo = 0.0L, ve = 1.0L, vo = 0.0L;
  UV c{1.0L, 1.0L};
  LD zk = 1.0L;
  LD last = 1.0L;
  for (int k = 1; k < 60; ++k) {
    c = uv_step(c, k);
    zk /= z;
    const LD sk = (k / 2 % 2 == 0) ? 1.0L : -1.0L;  // (-1)^{floor(k/2)}
    const LD tu = sk * c.u * zk;
    if (std::abs(tu) > last) break;
    if (k % 2 == 0) {
      ue += tu;
      ve += sk * c.v * zk;
    } else {
      uo += tu;
      vo += sk * c.v * zk;
    }
    last = std::abs(tu);
    if (last < 1e-22L) break;
  }
  const LD phase = z - std::numbers::pi_v<LD> / 4.0L;
  const LD cp = std::cos(phase), sp = std::sin(phase);
  const LD x14 = std::pow(X, 0.25L);
  return {(cp * ue + sp * uo) / (kSqrtPi * x14),
          (sp * ve - cp * vo) * x14 / kSqrtPi};
}

// Taylor step of the Airy ODE y'' = x y: from (y, y') at x0 to x0 + h via
// c_{k+2} = (x0 c_k + c_{k-1}) / ((k+1)(k+2)).
Pair ode_taylor_step(LD x0, Pair y, LD h) {
  std::array<LD, 40> c{};
  c[0] = y.ai;
  c[1] = y.aip;
  LD val = c[0] + c[1] * h;
  LD der = c[1];
  LD hk = h;
  for (int k = 0; k + 2 < static_cast<int>(c.size()); ++k) {
    const LD prev = (k >= 1) ? c[k - 1] : 0.0L;
    c[k + 2] = (x0 * c[k] + prev) / (LD(k + 1) * LD(k + 2));
    hk *= h;
    const LD term = c[k + 2] * hk;
    val += term;
    der += c[k + 2] * LD(k + 2) * hk / h;
    if (std::abs(term) < 1e-24L * std::abs(val) && k > 6) break;
  }
  return {val, der};
}

// Bridge (6, 9): march down from the machine-accurate asymptotic anchor at
// x = 9. Marching toward smaller x amplifies the Ai direction relative to
// Bi, so the relative error contracts along the way.
Pair bridge(LD x) {
  LD x0 = 9.0L;
  Pair y = asymptotic_positive(x0);
  while (x0 - x > 1e-30L) {
    const LD h = std::max(x - x0, -0.75L);
    y = ode_taylor_step(x0, y, h);
    x0 += h;
  }
  return y;
}

Pair eval(LD x) {
  if (x >= 9.0L) return asymptotic_positive(x);
  if (x > 6.0L) return bridge(x);
  if (x >= -8.0L) return series(x);
  return asymptotic_negative(x);
}

}  // namespace

AiryEval airy(double x) {
  if (!(std::abs(x) <= 50.0))
    throw RangeExceeded("airy: |x| = " + std::to_string(std::abs(x)) +
                        " exceeds the supported range 50");
  const Pair p = eval(static_cast<LD>(x));
  return {static_cast<double>(p.ai), static_cast<double>(p.aip)};
}

std::vector<double> airy_negative_zeros(int n) {
  if (n < 1 || n > 20)
    throw RangeExceeded("airy_negative_zeros: n must be in [1, 20]");
  std::vector<double> zeros;
  zeros.reserve(n);
  for (int k = 1; k <= n; ++k) {
    // asymptotic guess z_k ~ -T(3 pi (4k-1)/8), T(t) = t^{2/3}(1 + 5/48 t^{-2} - ...)
    const double t = 3.0 * std::numbers::pi * (4.0 * k - 1.0) / 8.0;
    const double t2 = 1.0 / (t * t);
    double z = -std::pow(t, 2.0 / 3.0) *
               (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * 77125.0 / 82944.0)));
    for (int it = 0; it < 12; ++it) {
      const AiryEval e = airy(z);
      const double dz = e.ai / e.ai_prime;
      z -= dz;
      if (std::abs(dz) < 1e-15 * std::abs(z)) break;
    }
    zeros.push_back(z);
  }
  return zeros;
}

}  // namespace qarrival::minimality
