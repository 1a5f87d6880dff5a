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

#include <cstdint>
#include <string>
#include <vector>

namespace qarrival::verify {

struct Options {
  int count = 500;
  int dim_min = 2;
  int dim_max = 8;
  std::uint64_t seed = 20260811;
  int gap_count = 2000;
  int gap_dim_min = 2;
  int gap_dim_max = 10;
  // Test canary: deliberately records one false violation so suites can
  // confirm the battery fails loudly.
  bool inject_violation = false;
};

struct Check {
  std::string name;
  long long checked = 0;
  long long failed = 0;
  // Smallest slack seen over all instances; negative means a violation.
  double worst_margin = 1e300;
};

struct Report {
  std::vector<Check> checks;
  bool passed() const {
    for (const auto& c : checks)
      if (c.failed > 0) return false;
    return true;
  }
};

// Randomized theorem battery over random_system instances with D psi = 0:
// both uncertainty relations, closed-form vs quadrature moment agreement,
// the dilation norm identity, R bounds and the R K = K^* R commutation,
// the semigroup law, and the near-minimality certificate for both kinds.
Report run_system_battery(const Options& options);

// Randomized gap-lemma battery over (A, rho) pairs: trace-norm and
// fidelity bounds must never be violated.
Report run_gap_battery(const Options& options);

}  // namespace qarrival::verify
