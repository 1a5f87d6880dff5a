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
#include "qarrival/airy.hpp"
#include "qarrival/errors.hpp"
#include "qarrival/rng.hpp"

using qarrival::minimality::airy;
using qarrival::minimality::airy_negative_zeros;

namespace {

struct Reference {
  double x;
  double ai;
  double ai_prime;
};

// Reference values spanning the series, bridge, and asymptotic regions.
constexpr Reference kReference[] = {
    {-10.0, 0.040241238486443191, 0.99626504413279006},
    {-8.0, -0.052705050356386203, 0.93556093819830655},
    {-6.5, -0.2380203019971158, -0.67495249251320217},
    {-5.0, 0.35076100902411432, 0.32719281855444314},
    {-2.0, 0.22740742820168558, 0.61825902074169104},
    {-1.0, 0.53556088329235212, -0.010160567116645209},
    {0.0, 0.35502805388781724, -0.2588194037928068},
    {0.5, 0.23169360648083349, -0.22491053266468389},
    {1.0, 0.13529241631288142, -0.15914744129679321},
    {2.0, 0.034924130423274379, -0.053090384433653632},
    {5.0, 0.00010834442813607442, -0.00024741389086846248},
    {6.0, 9.9476943602528896e-6, -2.4765200397034955e-5},
    {6.5, 2.7958823432049136e-6, -7.2319314666017926e-6},
    {7.0, 7.4921288639971671e-7, -2.008150894738792e-6},
    {8.0, 4.6922076160992316e-8, -1.3414392979067866e-7},
    {10.0, 1.1047532552898686e-10, -3.5206336767389236e-10},
    {12.0, 1.3931846888753608e-13, -4.8547365549853085e-13},
    {20.0, 1.6916728686705403e-27, -7.586391625748355e-27},
    {49.0, 5.2365217822248587e-101, -3.6682320952438244e-100},
};

}  // namespace

TEST_SUITE("airy") {

TEST_CASE("reference values across all evaluation regions") {
  for (const auto& r : kReference) {
    const auto e = airy(r.x);
    CHECK(std::abs(e.ai - r.ai) <=
          1e-10 * std::max(std::abs(r.ai), 1e-30));
    CHECK(std::abs(e.ai_prime - r.ai_prime) <=
          1e-10 * std::max(std::abs(r.ai_prime), 1e-30));
  }
}

TEST_CASE("series region agrees with the factorial-form series oracle") {
  for (const double x : {-5.5, -3.0, -0.7, 0.0, 1.3, 4.0, 5.8}) {
    const double oracle =
        static_cast<double>(oracles::airy_series_oracle(x));
    CHECK(airy(x).ai == doctest::Approx(oracle).epsilon(1e-11));
  }
}

TEST_CASE("value at the first zero and decay at +10") {
  CHECK(std::abs(airy(-2.3381074104).ai) < 1e-9);

  const double a10 = airy(10.0).ai;
  CHECK(a10 > 0.0);
  CHECK(a10 < 1e-9);
}

TEST_CASE("negative zeros: count, accuracy, ordering, interlacing") {
  const auto zeros = airy_negative_zeros(20);
  REQUIRE(zeros.size() == 20);

  CHECK(std::abs(zeros[0] - (-2.3381074104)) < 1e-9);
  CHECK(std::abs(zeros[1] - (-4.0879494441)) < 1e-9);
  CHECK(zeros[0] == doctest::Approx(-2.338107410459767).epsilon(1e-12));
  CHECK(zeros[1] == doctest::Approx(-4.087949444130971).epsilon(1e-12));
  CHECK(zeros[19] == doctest::Approx(-20.537332907677567).epsilon(1e-11));

  for (const double z : zeros) CHECK(std::abs(airy(z).ai) <= 1e-10);

  for (int i = 0; i + 1 < 20; ++i) CHECK(zeros[i + 1] < zeros[i]);

  // Ai' alternates sign at consecutive zeros, and Ai keeps one sign inside
  // each interval: the derivative's zeros interlace (sign-change bracketing).
  for (int i = 0; i + 1 < 20; ++i) {
    CHECK(airy(zeros[i]).ai_prime * airy(zeros[i + 1]).ai_prime < 0.0);
    const double mid = 0.5 * (zeros[i] + zeros[i + 1]);
    CHECK(airy(mid).ai * airy(zeros[i] - 1e-3).ai > 0.0);
  }

  CHECK_THROWS_AS(airy_negative_zeros(21), qarrival::RangeExceeded);
  CHECK_THROWS_AS(airy_negative_zeros(0), qarrival::RangeExceeded);
}

TEST_CASE("ODE residual via five-point stencils at random points") {
  qarrival::SplitMix64 g(101);
  const double h = 0.01;
  for (int i = 0; i < 100; ++i) {
    const double x = -10.0 + 15.0 * qarrival::uniform01(g);
    const double lhs = oracles::second_derivative(
        [](double t) { return airy(t).ai; }, x, h);
    CHECK(std::abs(lhs - x * airy(x).ai) <= 1e-7);
  }
}

TEST_CASE("derivative consistency against a stencil of Ai") {
  for (const double x : {-7.3, -4.2, -1.1, 0.8, 3.3, 6.2, 8.5, 11.0}) {
    const double stencil = oracles::first_derivative(
        [](double t) { return airy(t).ai; }, x, 1e-3);
    CHECK(airy(x).ai_prime ==
          doctest::Approx(stencil).epsilon(1e-8));
  }
}

TEST_CASE("range limit enforced") {
  CHECK_THROWS_AS(airy(50.5), qarrival::RangeExceeded);
  CHECK_THROWS_AS(airy(-51.0), qarrival::RangeExceeded);
  CHECK_NOTHROW(airy(50.0));
  CHECK_NOTHROW(airy(-50.0));
}

}  // TEST_SUITE
