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

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "qarrival/models.hpp"

namespace qarrival::config {

using Json = nlohmann::json;

// A parsed configuration: either raw H/D/psi matrices or a named model
// block (two_level, constant, ion). Complex numbers travel as [re, im].
struct Loaded {
  AbsorptiveSystem system;
  linops::StateVector psi;
  std::string model;          // "matrix", "two_level", "constant", "ion"
  double q = 1.0;             // detection efficiency when the model carries one
  std::string digest;         // fnv1a-64 of the canonical serialization
  std::optional<models::IonScheme> ion;   // set for the ion model
};

// Throws ConfigError with the offending field path in the message.
Loaded load(const Json& doc, double hbar_override = 0.0);
Loaded load_file(const std::string& path, double hbar_override = 0.0);

// Canonical matrix-form document for a system; load(to_json(...)) rebuilds
// an identical system, so digests round-trip.
Json to_json(const AbsorptiveSystem& sys, const linops::StateVector& psi);

std::string digest_of(const Json& canonical);

}  // namespace qarrival::config
