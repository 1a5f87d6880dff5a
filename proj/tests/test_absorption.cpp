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

#include <cmath>

#include <doctest.h>

#include "oracles.hpp"
#include "qarrival/absorption.hpp"
#include "qarrival/models.hpp"
#include "qarrival/rng.hpp"

using namespace qarrival;

namespace {

// Fig. 1 configuration: omega = 2, gamma = 2 sqrt(2), hbar = 1.
models::PreparedSystem fig1() {
  return models::two_level(2.0, 2.0 * std::sqrt(2.0), 1.0);
}

Matrix pauli_x() {
  Matrix h(2, 2);
  h << 0.0, 1.0, 1.0, 0.0;
  return h;
}

// Two-level block extended by one detector-free level carrying an
// H-eigenvector at the two-level mean energy (zero).
struct Diluted {
  AbsorptiveSystem sys;
  linops::StateVector psi;
};

Diluted diluted_fig1(double p_prime) {
  const auto base = fig1();
  Matrix h = Matrix::Zero(3, 3);
  h.topLeftCorner(2, 2) = base.system.hamiltonian();
  Matrix d = Matrix::Zero(3, 3);
  d.topLeftCorner(2, 2) = base.system.absorber();
  Vector psi(3);
  psi << std::sqrt(p_prime), 0.0, std::sqrt(1.0 - p_prime);
  return {AbsorptiveSystem(std::move(h), std::move(d), 1.0),
          linops::StateVector(std::move(psi))};
}

}  // namespace

TEST_SUITE("absorption") {

TEST_CASE("construction validates inputs") {
  Matrix h = pauli_x();
  Matrix good = Matrix::Zero(2, 2);
  good(1, 1) = 1.0;

  Matrix not_herm(2, 2);
  not_herm << 0.0, 1.0, 2.0, 0.0;
  CHECK_THROWS_AS(make_system(not_herm, good), NotHermitian);

  Matrix indefinite = Matrix::Zero(2, 2);
  indefinite(0, 0) = 1.0;
  indefinite(1, 1) = -0.1;
  CHECK_THROWS_AS(make_system(h, indefinite), NotPositive);

  CHECK_THROWS_AS(make_system(h, Matrix::Zero(3, 3)), DimensionMismatch);
  CHECK_THROWS_AS(make_system(h, good, -1.0), NonpositiveParameter);
}

TEST_CASE("fig. 1 configuration has the expected generator") {
  const auto [sys, psi] = fig1();
  Matrix expect(2, 2);
  expect << 0.0, 1.0, 1.0, Complex(0.0, -std::sqrt(2.0));
  CHECK((sys.generator() - expect).norm() < 1e-14);
  CHECK_FALSE(sys.ode_fallback());

  // D = 0 gives purely unitary evolution: K = H
  const auto unitary = make_system(pauli_x(), Matrix::Zero(2, 2));
  CHECK((unitary.generator() - pauli_x()).norm() == 0.0);
}

TEST_CASE("evolve is the identity at t = 0 and rejects negative times") {
  const auto [sys, psi] = fig1();
  CHECK((evolve(sys, psi.amplitudes(), 0.0) - psi.amplitudes()).norm() <
        1e-14);
  CHECK_THROWS_AS(evolve(sys, psi.amplitudes(), -0.5), NegativeTime);
}

TEST_CASE("constant absorber loses norm exponentially for every state") {
  const auto sys = models::constant_absorber(pauli_x(), 0.5, 1.0);
  SplitMix64 g(5);
  for (int trial = 0; trial < 5; ++trial) {
    Vector x(2);
    const auto [a, b] = normal_pair(g);
    const auto [c, d] = normal_pair(g);
    x << Complex(a, b), Complex(c, d);
    const auto psi = linops::StateVector::normalized(x);
    CHECK(survival(sys, psi, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(survival(sys, psi, 3.0) == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
  }
}

TEST_CASE("eigen propagation matches the Pade exponential oracle") {
  const auto [sys, psi] = fig1();
  for (const double t : {0.3, 1.0, 2.7, 6.0}) {
    const Matrix oracle = oracles::expm_propagator(sys.generator(), 1.0, t);
    CHECK((evolve(sys, psi.amplitudes(), t) - oracle * psi.amplitudes()).norm() <
          1e-8);
    CHECK((propagator(sys, t) - oracle).norm() < 1e-8);
  }
}

TEST_CASE("exceptional point falls back to ODE propagation and still matches") {
  // gamma = 2 omega puts K at its defective point
  const auto [sys, psi] = models::two_level(2.0, 4.0, 1.0);
  CHECK(sys.ode_fallback());
  for (const double t : {0.4, 1.3, 3.1}) {
    const Matrix oracle = oracles::expm_propagator(sys.generator(), 1.0, t);
    CHECK((evolve(sys, psi.amplitudes(), t) - oracle * psi.amplitudes()).norm() <
          1e-8);
  }
  // the doubling limit still produces R = 0 with its invariance checks
  const auto a = asymptotic_operator(sys);
  CHECK(a.converged);
  CHECK(a.r.norm() < 1e-8);
}

TEST_CASE("semigroup law and contraction on a random system") {
  const auto [sys, psi] = models::random_system(5, 2, 99);
  SplitMix64 g(13);
  for (int trial = 0; trial < 10; ++trial) {
    const double s = 2.0 * uniform01(g);
    const double t = 2.0 * uniform01(g);
    const Vector two = evolve(sys, evolve(sys, psi.amplitudes(), s), t);
    const Vector one = evolve(sys, psi.amplitudes(), s + t);
    CHECK((two - one).norm() < 1e-9);
  }
  double prev = 1.0 + 1e-15;
  for (double t = 0.0; t < 8.0; t += 0.25) {
    const double s = survival(sys, psi, t);
    CHECK(s <= prev + 1e-12);
    prev = s;
  }
}

TEST_CASE("asymptotic operator: absorbing, unitary, and block cases") {
  const auto [sys, psi] = fig1();
  const auto a = asymptotic_operator(sys);
  CHECK(a.converged);
  CHECK(a.r.norm() < 1e-10);
  CHECK(absorption_probability(sys, psi) == doctest::Approx(1.0));

  const auto unitary = make_system(pauli_x(), Matrix::Zero(2, 2));
  const auto u = asymptotic_operator(unitary);
  CHECK((u.r - Matrix::Identity(2, 2)).norm() < 1e-10);
  Vector e0(2);
  e0 << 1.0, 0.0;
  CHECK(absorption_probability(unitary, linops::StateVector(e0)) ==
        doctest::Approx(0.0));

  const auto block = diluted_fig1(0.37);
  const auto rb = asymptotic_operator(block.sys);
  Matrix expect = Matrix::Zero(3, 3);
  expect(2, 2) = 1.0;
  CHECK((rb.r - expect).norm() < 1e-9);
  CHECK(absorption_probability(block.sys, block.psi) ==
        doctest::Approx(0.37).epsilon(1e-9));
}

TEST_CASE("asymptotic operator commutes with the generator as R K = K* R") {
  for (const auto seed : {1u, 2u, 3u}) {
    const auto [sys, psi] = models::random_system(6, 3, seed);
    const auto a = asymptotic_operator(sys);
    const Matrix comm = a.r * sys.generator() - sys.generator().adjoint() * a.r;
    CHECK(comm.norm() <= 1e-8 * sys.generator_norm() + 1e-12);
  }
}

TEST_CASE("dilation trajectory vanishes at t = 0 under the assumption") {
  const auto [sys, psi] = fig1();
  CHECK(dilation_trajectory(sys, psi, 0.0).norm() < 1e-14);
}

TEST_CASE("dilation trajectory of the constant absorber is exponential") {
  const auto sys = models::constant_absorber(pauli_x(), 0.5, 1.0);
  Vector e0(2);
  e0 << 1.0, 0.0;
  const auto psi = linops::StateVector(e0);
  for (const double t : {0.0, 0.7, 2.0}) {
    // ||J psi||^2 = 2 alpha exp(-2 alpha t) with alpha = 1/2
    CHECK(dilation_trajectory(sys, psi, t).squaredNorm() ==
          doctest::Approx(std::exp(-t)).epsilon(1e-10));
  }
}

TEST_CASE("dilation norm integrates to the absorption probability") {
  const auto [sys, psi] = models::random_system(4, 2, 1234);
  const double p = absorption_probability(sys, psi);
  const double integral = oracles::simpson(
      [&](double t) { return dilation_trajectory(sys, psi, t).squaredNorm(); },
      0.0, 60.0, 6000);
  CHECK(std::abs(integral - p) < 1e-6);

  // pointwise, the squared dilation norm is -dS/dt
  for (const double t : {0.3, 1.0, 2.4}) {
    const double slope = oracles::first_derivative(
        [&](double u) { return survival(sys, psi, u); }, t, 1e-4);
    CHECK(dilation_trajectory(sys, psi, t).squaredNorm() ==
          doctest::Approx(-slope).epsilon(1e-8));
  }
}

TEST_CASE("F is positive and additive over time intervals") {
  const auto [sys, psi] = models::random_system(5, 2, 777);
  auto f_op = [&](double t, double s) -> Matrix {
    const Matrix bt = propagator(sys, t);
    const Matrix bs = propagator(sys, s);
    return bt.adjoint() * bt - bs.adjoint() * bs;
  };
  const Matrix f01 = f_op(0.3, 1.1);
  const Matrix f12 = f_op(1.1, 2.9);
  const Matrix f02 = f_op(0.3, 2.9);
  CHECK((f02 - (f01 + f12)).norm() < 1e-12);

  Eigen::SelfAdjointEigenSolver<Matrix> es(f01);
  CHECK(es.eigenvalues()(0) > -1e-12);
}

TEST_CASE("characteristic function normalization and derivative identities") {
  const auto [sys, psi] = fig1();
  const auto a = asymptotic_operator(sys);
  CHECK(std::abs(characteristic_function(sys, psi, 0.0, a) - 1.0) < 1e-12);

  const double p = absorption_probability(sys, psi);
  const Vector v = psi.amplitudes();
  const Vector hv = sys.hamiltonian() * v;
  const Vector proj = hv - a.r * hv;

  // i hbar C'(0) = <psi|(1-R) H psi>/p via a central difference
  const double h = 1e-5;
  const Complex c_plus = characteristic_function(sys, psi, h, a);
  const Complex c_minus = characteristic_function(sys, psi, -h, a);
  const Complex deriv = (c_plus - c_minus) / (2.0 * h);
  CHECK(std::abs(Complex(0.0, 1.0) * deriv - v.dot(proj) / p) < 1e-6);

  // -hbar^2 C''(0) = <H psi|(1-R) H psi>/p via the fourth-order stencil
  const Complex c_p2 = characteristic_function(sys, psi, 2.0 * h, a);
  const Complex c_m2 = characteristic_function(sys, psi, -2.0 * h, a);
  const Complex c_0 = characteristic_function(sys, psi, 0.0, a);
  const Complex second =
      (-c_p2 + 16.0 * c_plus - 30.0 * c_0 + 16.0 * c_minus - c_m2) /
      (12.0 * h * h);
  CHECK(std::abs(-second - hv.dot(proj) / p) < 1e-5);
}

TEST_CASE("scaling covariance: (cH, cD) reproduces S(ct)") {
  const auto [sys, psi] = models::random_system(4, 1, 31);
  const double c = 2.7;
  const AbsorptiveSystem scaled(c * sys.hamiltonian(), c * sys.absorber(), 1.0);
  for (const double t : {0.2, 0.9, 2.2}) {
    CHECK(survival(scaled, psi, t) ==
          doctest::Approx(survival(sys, psi, c * t)).epsilon(1e-9));
  }
}

TEST_CASE("contraction property holds for the cached factorization") {
  const auto [sys, psi] = models::random_system(7, 3, 4242);
  REQUIRE_FALSE(sys.ode_fallback());
  for (Eigen::Index i = 0; i < sys.dim(); ++i)
    CHECK(sys.factorization()->eigenvalues(i).imag() <= 1e-12);
}

}  // TEST_SUITE
