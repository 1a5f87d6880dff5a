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

#include "qarrival/absorption.hpp"

#include <cmath>
#include <mutex>
#include <string>

namespace qarrival {

namespace {

// Relative classification tolerance for "real" eigenvalues of K.
constexpr double kRealSpectrumTol = 1e-12;

double energy_scale(const AbsorptiveSystem& sys) {
  return std::max(sys.generator_norm(), 1e-300);
}

// Dormand-Prince RK45 for psi' = -(i/hbar) K psi; used when K has no
// trustworthy factorization (near-defective generator).
Vector rk45_evolve(const Matrix& k, double hbar, Vector psi, double t_final) {
  if (t_final == 0.0) return psi;
  const Complex scale(0.0, -1.0 / hbar);
  auto rhs = [&](const Vector& y) -> Vector { return scale * (k * y); };

  const double rel_tol = 1e-10;
  const double abs_tol = 1e-14 * psi.norm();
  const double k_norm = k.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  double t = 0.0;
  double h = std::min(t_final, 0.05 * hbar / std::max(k_norm, 1e-300));

  while (t < t_final) {
    h = std::min(h, t_final - t);
    const Vector k1 = rhs(psi);
    const Vector k2 = rhs(psi + h * (1.0 / 5.0) * k1);
    const Vector k3 = rhs(psi + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
    const Vector k4 = rhs(psi + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 +
                                     32.0 / 9.0 * k3));
    const Vector k5 =
        rhs(psi + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                       64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
    const Vector k6 =
        rhs(psi + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                       46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                       5103.0 / 18656.0 * k5));
    const Vector y5 = psi + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 +
                                 125.0 / 192.0 * k4 - 2187.0 / 6784.0 * k5 +
                                 11.0 / 84.0 * k6);
    const Vector k7 = rhs(y5);
    const Vector y4 = psi + h * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                                 393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                                 187.0 / 2100.0 * k6 + 1.0 / 40.0 * k7);
    const double err = (y5 - y4).norm();
    const double tol = abs_tol + rel_tol * psi.norm();
    if (err <= tol || h <= 1e-14 * t_final) {
      t += h;
      psi = y5;
    }
    const double factor =
        (err > 0.0) ? 0.9 * std::pow(tol / err, 0.2) : 2.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
  return psi;
}

}  // namespace

struct AbsorptiveSystem::RCache {
  std::mutex mutex;
  std::optional<AsymptoticOperator> value;
};

AbsorptiveSystem::AbsorptiveSystem(Matrix hamiltonian, Matrix absorber,
                                   double hbar)
    : h_(std::move(hamiltonian)), d_(std::move(absorber)), hbar_(hbar),
      r_cache_(std::make_shared<RCache>()) {
  linops::require_square_finite(h_, "make_system(H)");
  linops::require_square_finite(d_, "make_system(D)");
  if (h_.rows() != d_.rows())
    throw DimensionMismatch("make_system: H and D dimensions differ");
  if (!(hbar_ > 0.0))
    throw NonpositiveParameter("make_system: hbar must be positive");
  if (!linops::is_hermitian(h_))
    throw NotHermitian("make_system: H is not Hermitian");
  if (!linops::is_hermitian(d_))
    throw NotHermitian("make_system: D is not Hermitian");
  d_sqrt_ = linops::psd_sqrt(d_);   // rejects indefinite D

  k_ = h_ - Complex(0.0, 1.0) * d_;
  k_norm_ = linops::operator_norm(k_);
  d_norm_ = linops::operator_norm(d_);

  try {
    auto fact = linops::spectral_factorize(k_);
    // Roundoff can push decay rates marginally above zero; clamp so the
    // semigroup stays contractive at arbitrarily large horizons.
    const double tol = kRealSpectrumTol * k_norm_;
    for (Eigen::Index i = 0; i < fact.eigenvalues.size(); ++i) {
      const double im = fact.eigenvalues(i).imag();
      if (im > tol)
        throw NotPositive("make_system: K eigenvalue with positive imaginary part " +
                          std::to_string(im));
      if (im > 0.0)
        fact.eigenvalues(i) = Complex(fact.eigenvalues(i).real(), 0.0);
    }
    factorization_ = std::move(fact);
  } catch (const DefectiveMatrix&) {
    factorization_.reset();
  }
}

AbsorptiveSystem make_system(Matrix hamiltonian, Matrix absorber, double hbar) {
  return AbsorptiveSystem(std::move(hamiltonian), std::move(absorber), hbar);
}

Vector evolve(const AbsorptiveSystem& sys, const Vector& psi, double t) {
  if (t < 0.0) throw NegativeTime("evolve: t must be nonnegative");
  if (psi.size() != sys.dim())
    throw DimensionMismatch("evolve: state dimension mismatch");
  if (const auto& fact = sys.factorization()) {
    Vector c = fact->inverse_vectors * psi;
    for (Eigen::Index i = 0; i < c.size(); ++i)
      c(i) *= std::exp(Complex(0.0, -t / sys.hbar()) * fact->eigenvalues(i));
    return fact->right_vectors * c;
  }
  return rk45_evolve(sys.generator(), sys.hbar(), psi, t);
}

Matrix propagator(const AbsorptiveSystem& sys, double t) {
  if (t < 0.0) throw NegativeTime("propagator: t must be nonnegative");
  if (const auto& fact = sys.factorization()) {
    Vector phases(fact->eigenvalues.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
      phases(i) = std::exp(Complex(0.0, -t / sys.hbar()) * fact->eigenvalues(i));
    return fact->right_vectors * phases.asDiagonal() * fact->inverse_vectors;
  }
  Matrix b(sys.dim(), sys.dim());
  for (Eigen::Index j = 0; j < sys.dim(); ++j)
    b.col(j) = rk45_evolve(sys.generator(), sys.hbar(),
                           Vector(Matrix::Identity(sys.dim(), sys.dim()).col(j)), t);
  return b;
}

double survival(const AbsorptiveSystem& sys, const linops::StateVector& psi,
                double t) {
  return evolve(sys, psi.amplitudes(), t).squaredNorm();
}

namespace {

// Doubles the horizon until B_T^* B_T settles: either two successive
// Frobenius distances fall below 1e-10, or the iterate agrees with the
// algebraic target to 1e-8. The natural time unit grows with 1/r_min so a
// genuinely slow decay mode is waited out rather than misread as a limit.
Matrix semigroup_rlimit(const AbsorptiveSystem& sys, double cap_natural,
                        double slowest_rate, const Matrix* target,
                        double& horizon_out) {
  const double t_unit = sys.hbar() / energy_scale(sys);
  const double t_conv =
      (slowest_rate > 0.0) ? 1.0 / slowest_rate : t_unit;
  const double cap = cap_natural * std::max(t_unit, t_conv);
  double t = std::max(t_unit, 1e-2 * t_conv);
  Matrix prev = propagator(sys, t).adjoint() * propagator(sys, t);
  int stable = 0;
  while (true) {
    t *= 2.0;
    const Matrix b = propagator(sys, t);
    Matrix cur = b.adjoint() * b;
    const double dist = (cur - prev).norm();
    prev = std::move(cur);
    if (target != nullptr && (prev - *target).norm() < 1e-8) break;
    if (dist < 1e-10 && t >= 64.0 * t_unit) {
      if (++stable >= 2) break;
    } else {
      stable = 0;
    }
    if (t > cap)
      throw NonConvergent("asymptotic_operator: horizon cap reached at t = " +
                          std::to_string(t));
  }
  horizon_out = t;
  return prev;
}

}  // namespace

AsymptoticOperator asymptotic_operator(const AbsorptiveSystem& sys,
                                       double horizon_cap_natural) {
  if (const auto& fact = sys.factorization()) {
    // Algebraic limit: only pairs of equal real eigenvalues survive in
    // W^* E_t^* (V^*V) E_t W as t -> infinity.
    const auto n = sys.dim();
    const double tol = kRealSpectrumTol * sys.generator_norm();
    const Matrix gram = fact->right_vectors.adjoint() * fact->right_vectors;
    Matrix m = Matrix::Zero(n, n);
    double slowest_rate = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double decay =
          2.0 * std::abs(fact->eigenvalues(j).imag()) / sys.hbar();
      if (std::abs(fact->eigenvalues(j).imag()) > tol)
        slowest_rate = (slowest_rate == 0.0) ? decay
                                             : std::min(slowest_rate, decay);
      for (Eigen::Index k = 0; k < n; ++k) {
        const Complex lj = fact->eigenvalues(j);
        const Complex lk = fact->eigenvalues(k);
        const bool both_real =
            std::abs(lj.imag()) <= tol && std::abs(lk.imag()) <= tol;
        if (both_real && std::abs(lj - lk) <= 100.0 * tol) m(j, k) = gram(j, k);
      }
    }
    Matrix r_algebraic =
        fact->inverse_vectors.adjoint() * m * fact->inverse_vectors;
    r_algebraic = 0.5 * (r_algebraic + Matrix(r_algebraic.adjoint()));

    double horizon = 0.0;
    const Matrix r_semigroup = semigroup_rlimit(
        sys, horizon_cap_natural, slowest_rate, &r_algebraic, horizon);
    if ((r_algebraic - r_semigroup).norm() > 1e-8)
      throw NonConvergent(
          "asymptotic_operator: semigroup limit and algebraic limit disagree");
    return {std::move(r_algebraic), true, horizon};
  }

  // No factorization: validate the limit through its defining invariances.
  double horizon = 0.0;
  const Matrix r_semigroup =
      semigroup_rlimit(sys, horizon_cap_natural, 0.0, nullptr, horizon);
  Matrix r = 0.5 * (r_semigroup + Matrix(r_semigroup.adjoint()));
  const double k_scale = sys.generator_norm();
  const Matrix commutator = r * sys.generator() -
                            sys.generator().adjoint() * r;
  const Matrix b = propagator(sys, horizon / 7.0);
  const double invariance = (b.adjoint() * r * b - r).norm();
  if (commutator.norm() > 1e-8 * k_scale || invariance > 1e-8)
    throw NonConvergent(
        "asymptotic_operator: limit fails the invariance cross-checks");
  return {std::move(r), true, horizon};
}

const AsymptoticOperator& AbsorptiveSystem::asymptotic(
    double horizon_cap_natural) const {
  std::lock_guard<std::mutex> lock(r_cache_->mutex);
  if (!r_cache_->value)
    r_cache_->value = asymptotic_operator(*this, horizon_cap_natural);
  return *r_cache_->value;
}

double absorption_probability(const AbsorptiveSystem& sys,
                              const linops::StateVector& psi) {
  const AsymptoticOperator& a = sys.asymptotic();
  const Vector& v = psi.amplitudes();
  double p = (v.dot(v) - v.dot(a.r * v)).real();
  p = std::clamp(p, 0.0, 1.0);
  const double tail = 1.0 - survival(sys, psi, a.horizon);
  if (std::abs(p - tail) > 1e-8)
    throw NonConvergent(
        "absorption_probability: operator route and survival route disagree: " +
        std::to_string(p) + " vs " + std::to_string(tail));
  return p;
}

Vector dilation_trajectory(const AbsorptiveSystem& sys,
                           const linops::StateVector& psi, double t) {
  const Vector bt = evolve(sys, psi.amplitudes(), t);
  return std::sqrt(2.0 / sys.hbar()) * (sys.absorber_sqrt() * bt);
}

Complex characteristic_function(const AbsorptiveSystem& sys,
                                const linops::StateVector& psi, double t,
                                const AsymptoticOperator& r) {
  const Vector& v = psi.amplitudes();
  const Vector one_minus_r_v = v - r.r * v;
  const double p = v.dot(one_minus_r_v).real();
  if (p < 1e-12)
    throw ZeroAbsorption("characteristic_function: absorption probability is zero");
  if (t >= 0.0) {
    const Vector bt = evolve(sys, v, t);
    return (v.dot(bt) - v.dot(r.r * bt)) / p;
  }
  const Vector bt = evolve(sys, v, -t);
  return bt.dot(one_minus_r_v) / p;
}

}  // namespace qarrival
