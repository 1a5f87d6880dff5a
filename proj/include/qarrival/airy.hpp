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

#include <vector>

namespace qarrival::minimality {

struct AiryEval {
  double ai = 0.0;
  double ai_prime = 0.0;
};

// Ai(x) and Ai'(x) for |x| <= 50 (RangeExceeded beyond). Maclaurin series
// in extended precision on [-8, 6], asymptotic expansions for x <= -8 and
// x >= 9, and Taylor continuation of the Airy ODE from the asymptotic
// anchor at x = 9 across the band (6, 9) where neither form reaches
// 1e-10 relative on its own.
AiryEval airy(double x);

// First n zeros of Ai on the negative axis (n <= 20), Newton-refined from
// the standard asymptotic guesses; each satisfies |Ai(zero)| <= 1e-10.
std::vector<double> airy_negative_zeros(int n);

}  // namespace qarrival::minimality
