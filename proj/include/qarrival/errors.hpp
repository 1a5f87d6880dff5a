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

#include <stdexcept>

namespace qarrival {

// Base class for every error the library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct NotPositive : Error { using Error::Error; };
struct DefectiveMatrix : Error { using Error::Error; };
struct NegativeTime : Error { using Error::Error; };
struct NonConvergent : Error { using Error::Error; };
struct ZeroAbsorption : Error { using Error::Error; };
struct DivergentMoment : Error { using Error::Error; };
struct RangeExceeded : Error { using Error::Error; };
struct NonpositiveScale : Error { using Error::Error; };
struct OptimizerFailed : Error { using Error::Error; };
struct NonpositiveParameter : Error { using Error::Error; };
struct RegimeViolation : Error { using Error::Error; };
struct HorizonTooSmall : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct DegenerateGroundState : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace qarrival
