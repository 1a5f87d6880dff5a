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

#include <ostream>
#include <string>
#include <vector>

namespace qarrival::cli {

inline constexpr const char* kVersion = "0.1.0";

// Dispatches the subcommands (report, density, sweep, montecarlo, verify,
// groundstate, fit). Returns the process exit code: 0 on success, 2 when
// the D psi = 0 assumption fails, 1 on configuration or numerical errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace qarrival::cli
