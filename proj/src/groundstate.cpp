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

#include "qarrival/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace qarrival::groundstate {

namespace {

// Symmetric tridiagonal operator with constant off-diagonal, as produced by
// the central-difference discretizations here.
struct Tridiagonal {
  std::vector<double> diag;
  double off = 0.0;
};

Tridiagonal discretize(const Grid& grid,
                       const std::function<double(double)>& potential) {
  const double h = grid.spacing();
  Tridiagonal t;
  t.off = -1.0 / (h * h);
  t.diag.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.t_min + (i + 1) * h;
    t.diag[i] = 2.0 / (h * h) + potential(x);
  }
  return t;
}

// Sturm count: number of eigenvalues strictly below x.
int eigenvalues_below(const Tridiagonal& t, double x) {
  const double off2 = t.off * t.off;
  int count = 0;
  double q = t.diag[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.diag.size(); ++i) {
    if (q == 0.0) q = 1e-300;
    q = t.diag[i] - x - off2 / q;
    if (q < 0.0) ++count;
  }
  return count;
}

// k-th eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const Tridiagonal& t, int k) {
  const auto [dmin, dmax] =
      std::minmax_element(t.diag.begin(), t.diag.end());
  double lo = *dmin - 2.0 * std::abs(t.off);
  double hi = *dmax + 2.0 * std::abs(t.off);
  for (int iter = 0; iter < 200 && hi - lo > 1e-14 * (std::abs(hi) + 1.0);
       ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (eigenvalues_below(t, mid) > k)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

// Inverse iteration with the shifted tridiagonal (Thomas solve with partial
// pivoting folded into a scaled LU-free sweep).
std::vector<double> inverse_iteration(const Tridiagonal& t, double eigenvalue) {
  const int n = static_cast<int>(t.diag.size());
  const double scale = std::abs(eigenvalue) + std::abs(t.off);
  const double shift = eigenvalue - 1e-12 * scale;

  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = std::sin((i + 1) * 3.14159 / (n + 1.0)) + 0.3;

  std::vector<double> c(n), d(n);
  for (int sweep = 0; sweep < 3; ++sweep) {
    // Thomas algorithm on (T - shift I) x = v
    c[0] = t.off / (t.diag[0] - shift);
    d[0] = v[0] / (t.diag[0] - shift);
    for (int i = 1; i < n; ++i) {
      double denom = t.diag[i] - shift - t.off * c[i - 1];
      if (std::abs(denom) < 1e-300) denom = 1e-300;
      c[i] = t.off / denom;
      d[i] = (v[i] - t.off * d[i - 1]) / denom;
    }
    v[n - 1] = d[n - 1];
    for (int i = n - 2; i >= 0; --i) v[i] = d[i] - c[i] * v[i + 1];
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
  }
  return v;
}

std::vector<double> lowest_eigenvalues(const Tridiagonal& t, int k) {
  std::vector<double> out(k);
  for (int i = 0; i < k; ++i) out[i] = bisect_eigenvalue(t, i);
  return out;
}

Grid halved(const Grid& grid) { return {grid.t_min, grid.t_max, 2 * grid.n + 1}; }

RefinedSpectrum refined_spectrum(const Grid& grid, int k,
                                 const std::function<double(double)>& potential) {
  RefinedSpectrum rs;
  rs.raw = lowest_eigenvalues(discretize(grid, potential), k);
  const auto fine = lowest_eigenvalues(discretize(halved(grid), potential), k);
  rs.refined.resize(k);
  for (int i = 0; i < k; ++i)
    rs.refined[i] = (4.0 * fine[i] - rs.raw[i]) / 3.0;
  for (int i = 0; i < k; ++i)
    if (std::abs(rs.refined[i] - rs.raw[i]) > 1e-2)
      throw GridTooCoarse("eigenvalue " + std::to_string(i) +
                          " moved by more than 1e-2 under Richardson "
                          "extrapolation; refine the grid");
  return rs;
}

void check_grid(const Grid& grid) {
  if (grid.n < 100)
    throw GridTooCoarse("grid needs at least 100 interior points");
  if (!(grid.t_max > grid.t_min))
    throw Error("grid: t_max must exceed t_min");
}

void check_oscillator_grid(const Grid& grid) {
  check_grid(grid);
  if (std::abs(grid.t_min + grid.t_max) > 1e-12 * (grid.t_max - grid.t_min))
    throw Error("oscillator_spectrum: grid must be symmetric around 0");
  if (grid.t_max < 8.0)
    throw Error("oscillator_spectrum: t_max must be at least 8");
}

void check_wall_grid(const Grid& grid) {
  check_grid(grid);
  if (grid.t_min != 0.0)
    throw Error("wall_linear_spectrum: t_min must be 0 (Dirichlet wall)");
  if (grid.t_max < 15.0)
    throw Error("wall_linear_spectrum: t_max must be at least 15");
}

}  // namespace

RefinedSpectrum oscillator_spectrum_refined(const Grid& grid, int k) {
  check_oscillator_grid(grid);
  return refined_spectrum(grid, k, [](double t) { return t * t; });
}

RefinedSpectrum wall_linear_spectrum_refined(const Grid& grid, int k) {
  check_wall_grid(grid);
  return refined_spectrum(grid, k, [](double t) { return t; });
}

std::vector<double> oscillator_spectrum(const Grid& grid, int k) {
  return oscillator_spectrum_refined(grid, k).raw;
}

std::vector<double> wall_linear_spectrum(const Grid& grid, int k) {
  return wall_linear_spectrum_refined(grid, k).raw;
}

Eigen::VectorXd wall_linear_ground_vector(const Grid& grid) {
  check_wall_grid(grid);
  const Tridiagonal t = discretize(grid, [](double x) { return x; });
  const double e0 = bisect_eigenvalue(t, 0);
  const auto v = inverse_iteration(t, e0);

  Eigen::VectorXd out(grid.n);
  const double h = grid.spacing();
  for (int i = 0; i < grid.n; ++i) out(i) = v[i];
  out /= std::sqrt(h) * out.norm();
  if (out(grid.n / 8) < 0.0) out = -out;   // ground state has a fixed sign
  return out;
}

GapLemmaReport gap_lemma_check(const Matrix& a, const Matrix& rho) {
  linops::require_square_finite(a, "gap_lemma_check(A)");
  linops::require_square_finite(rho, "gap_lemma_check(rho)");
  if (a.rows() != rho.rows())
    throw DimensionMismatch("gap_lemma_check: dimensions differ");
  if (!linops::is_hermitian(a))
    throw NotHermitian("gap_lemma_check: A is not Hermitian");
  if (!linops::is_hermitian(rho, 1e-10))
    throw NotPositive("gap_lemma_check: rho is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-10)
    throw NotPositive("gap_lemma_check: rho must have unit trace");

  Eigen::SelfAdjointEigenSolver<Matrix> es_rho(rho);
  if (es_rho.eigenvalues()(0) < -1e-10)
    throw NotPositive("gap_lemma_check: rho has a negative eigenvalue");

  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  GapLemmaReport rep;
  rep.a0 = es.eigenvalues()(0);
  rep.a1 = es.eigenvalues()(1);
  const double gap = rep.a1 - rep.a0;
  if (gap <= 1e-10)
    throw DegenerateGroundState(
        "gap_lemma_check: ground state is degenerate (gap <= 1e-10)");

  const Vector phi0 = es.eigenvectors().col(0);
  rep.alpha = std::max((rho * a).trace().real() - rep.a0, 0.0);
  rep.lhs = linops::trace_norm(rho - phi0 * phi0.adjoint());
  rep.rhs = 2.0 * std::sqrt(rep.alpha / gap);
  rep.fidelity_deficit = 1.0 - phi0.dot(rho * phi0).real();
  rep.holds = rep.lhs <= rep.rhs + 1e-9;
  return rep;
}

}  // namespace qarrival::groundstate
