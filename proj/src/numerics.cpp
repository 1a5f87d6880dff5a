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

#include "qarrival/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "qarrival/errors.hpp"

namespace qarrival::numerics {

namespace {

// 15-point Kronrod nodes on [0, 1]; odd indices are the embedded Gauss-7
// nodes, plus the midpoint.
constexpr std::array<double, 7> kNodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898};
constexpr std::array<double, 8> kKronrodW = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr std::array<double, 4> kGaussW = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = kKronrodW[7] * fc;
  double resg = kGaussW[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kNodes[i];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kKronrodW[i] * (f1 + f2);
    if (i % 2 == 1) resg += kGaussW[i / 2] * (f1 + f2);
  }
  return {a, b, resk * h, std::abs(resk - resg) * std::abs(h)};
}

}  // namespace

// Globally adaptive: repeatedly bisect the panel with the largest error
// estimate until the summed error meets the tolerance or the panel budget
// runs out. The initial partition is dyadic-geometric so that structure
// living many decades below the window width still lands inside a panel
// narrow enough to register in its error estimate. Panels are summed in
// interval order for reproducibility.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol, double rel_tol,
                           int max_depth) {
  QuadratureResult acc;
  if (a == b) return acc;

  const std::size_t budget =
      2048 * static_cast<std::size_t>(std::max(max_depth, 1));
  const double min_width = 1e-14 * std::abs(b - a);

  std::vector<Panel> panels;
  panels.reserve(1024);
  double left = a;
  for (int k = 40; k >= 1; --k) {
    const double right = a + (b - a) * std::ldexp(1.0, -k);
    panels.push_back(gk15(f, left, right));
    left = right;
  }
  panels.push_back(gk15(f, left, b));
  while (true) {
    double total = 0.0, err = 0.0;
    for (const auto& p : panels) {
      total += p.value;
      err += p.error;
    }
    const double tol = std::max(abs_tol, rel_tol * std::abs(total));
    if (err <= tol) break;
    if (panels.size() >= budget) {
      acc.converged = false;
      break;
    }

    std::size_t worst = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].error > panels[worst].error) worst = i;
    const Panel split = panels[worst];
    if (split.b - split.a < min_width) {
      acc.converged = false;
      break;
    }
    const double mid = 0.5 * (split.a + split.b);
    panels[worst] = gk15(f, split.a, mid);
    panels.push_back(gk15(f, mid, split.b));
  }

  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const auto& p : panels) {
    acc.value += p.value;
    acc.error += p.error;
  }
  return acc;
}

double brent_root(const std::function<double(double)>& f, double a, double b,
                  double x_tol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw Error("brent_root: interval does not bracket a root");

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < max_iter; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 =
        2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * x_tol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p, q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a; fc = fa;
      d = b - a; e = d;
    }
  }
  return b;
}

ScalarMin golden_section_min(const std::function<double(double)>& f, double a,
                             double b, double x_tol, int max_iter) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int iter = 0; iter < max_iter && (b - a) > x_tol; ++iter) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? ScalarMin{x1, f1} : ScalarMin{x2, f2};
}

SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const std::vector<double>& step, double f_tol,
    int max_iter) {
  const int n = static_cast<int>(x0.size());
  constexpr double kAlpha = 1.0, kGamma = 2.0, kRho = 0.5, kSigma = 0.5;

  SimplexResult result;
  std::vector<std::vector<double>> x(n + 1, x0);
  for (int i = 0; i < n; ++i) x[i + 1][i] += step[i];
  std::vector<double> fx(n + 1);
  for (int i = 0; i <= n; ++i) fx[i] = f(x[i]);
  result.evaluations = n + 1;

  std::vector<int> idx(n + 1);
  for (int i = 0; i <= n; ++i) idx[i] = i;
  std::vector<double> xc(n), xr(n), xe(n), xk(n);

  for (int iter = 0; iter < max_iter; ++iter) {
    std::sort(idx.begin(), idx.end(), [&](int u, int v) { return fx[u] < fx[v]; });
    if (std::abs(fx[idx[n]] - fx[idx[0]]) <= f_tol) {
      result.converged = true;
      break;
    }

    for (int j = 0; j < n; ++j) xc[j] = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) xc[j] += x[idx[i]][j];
    for (int j = 0; j < n; ++j) xc[j] /= n;

    const std::vector<double>& xw = x[idx[n]];
    for (int j = 0; j < n; ++j) xr[j] = xc[j] + kAlpha * (xc[j] - xw[j]);
    const double fr = f(xr);
    ++result.evaluations;

    if (fr < fx[idx[0]]) {
      for (int j = 0; j < n; ++j) xe[j] = xc[j] + kGamma * (xr[j] - xc[j]);
      const double fe = f(xe);
      ++result.evaluations;
      if (fe < fr) {
        x[idx[n]] = xe; fx[idx[n]] = fe;
      } else {
        x[idx[n]] = xr; fx[idx[n]] = fr;
      }
      continue;
    }
    if (fr < fx[idx[n - 1]]) {
      x[idx[n]] = xr; fx[idx[n]] = fr;
      continue;
    }
    for (int j = 0; j < n; ++j) xk[j] = xc[j] + kRho * (xw[j] - xc[j]);
    const double fk = f(xk);
    ++result.evaluations;
    if (fk < fx[idx[n]]) {
      x[idx[n]] = xk; fx[idx[n]] = fk;
      continue;
    }
    for (int i = 1; i <= n; ++i) {
      for (int j = 0; j < n; ++j)
        x[idx[i]][j] = x[idx[0]][j] + kSigma * (x[idx[i]][j] - x[idx[0]][j]);
      fx[idx[i]] = f(x[idx[i]]);
      ++result.evaluations;
    }
  }

  std::sort(idx.begin(), idx.end(), [&](int u, int v) { return fx[u] < fx[v]; });
  result.x = x[idx[0]];
  result.value = fx[idx[0]];
  return result;
}

}  // namespace qarrival::numerics
