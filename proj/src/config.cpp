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

#include "qarrival/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qarrival/models.hpp"

namespace qarrival::config {

namespace {

Complex parse_complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(path + ": expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix parse_matrix(const Json& j, const std::string& name) {
  if (!j.is_array() || j.empty())
    throw ConfigError(name + ": expected a non-empty array of rows");
  const std::size_t n = j.size();
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != n)
      throw ConfigError(name + "[" + std::to_string(r) +
                        "]: expected a row of " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = parse_complex(j[r][c], name + "[" + std::to_string(r) + "][" +
                                           std::to_string(c) + "]");
  }
  return m;
}

Vector parse_state(const Json& j, const std::string& name) {
  if (!j.is_array() || j.empty())
    throw ConfigError(name + ": expected a non-empty array of [re, im] pairs");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(i) = parse_complex(j[i], name + "[" + std::to_string(i) + "]");
  return v;
}

double parse_positive(const Json& doc, const std::string& key) {
  if (!doc.contains(key) || !doc[key].is_number())
    throw ConfigError(key + ": expected a number");
  const double v = doc[key].get<double>();
  if (!(v > 0.0)) throw ConfigError(key + ": must be positive");
  return v;
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::string digest_of(const Json& canonical) {
  const std::string dump = canonical.dump();
  std::uint64_t hash = 0xcbf29ce484222325ull;   // FNV-1a 64
  for (unsigned char ch : dump) {
    hash ^= ch;
    hash *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << hash;
  return out.str();
}

Json to_json(const AbsorptiveSystem& sys, const linops::StateVector& psi) {
  Json doc;
  doc["hbar"] = sys.hbar();
  doc["H"] = matrix_to_json(sys.hamiltonian());
  doc["D"] = matrix_to_json(sys.absorber());
  Json state = Json::array();
  for (Eigen::Index i = 0; i < psi.dim(); ++i)
    state.push_back(complex_to_json(psi.amplitudes()(i)));
  doc["psi"] = std::move(state);
  return doc;
}

Loaded load(const Json& doc, double hbar_override) {
  if (!doc.is_object())
    throw ConfigError("config: expected a JSON object at the top level");
  double hbar = 1.0;
  if (doc.contains("hbar")) hbar = parse_positive(doc, "hbar");
  if (hbar_override > 0.0) hbar = hbar_override;

  std::string model = "matrix";
  if (doc.contains("model")) {
    if (!doc["model"].is_string())
      throw ConfigError("model: expected a string");
    model = doc["model"].get<std::string>();
  }
  double q = 1.0;
  std::optional<models::IonScheme> ion;

  auto build = [&]() -> models::PreparedSystem {
    if (model == "two_level") {
      return models::two_level(parse_positive(doc, "omega"),
                               parse_positive(doc, "gamma"), hbar);
    }
    if (model == "constant") {
      if (!doc.contains("H")) throw ConfigError("H: required for the constant model");
      if (!doc.contains("psi")) throw ConfigError("psi: required for the constant model");
      auto sys = models::constant_absorber(parse_matrix(doc["H"], "H"),
                                           parse_positive(doc, "alpha"), hbar);
      auto psi = linops::StateVector(parse_state(doc["psi"], "psi"));
      return {std::move(sys), std::move(psi)};
    }
    if (model == "ion") {
      models::IonScheme scheme;
      scheme.omega12 = parse_positive(doc, "omega12");
      scheme.omega23 = parse_positive(doc, "omega23");
      scheme.gamma34 = parse_positive(doc, "gamma34");
      if (doc.contains("q")) scheme.q = parse_positive(doc, "q");
      q = scheme.q;
      ion = scheme;
      return models::ion_effective(scheme, hbar);
    }
    if (model == "matrix") {
      for (const char* key : {"H", "D", "psi"})
        if (!doc.contains(key))
          throw ConfigError(std::string(key) + ": required field is missing");
      Matrix h = parse_matrix(doc["H"], "H");
      Matrix d = parse_matrix(doc["D"], "D");
      Vector psi = parse_state(doc["psi"], "psi");
      if (h.rows() != d.rows())
        throw ConfigError("D: dimension differs from H");
      if (psi.size() != h.rows())
        throw ConfigError("psi: dimension differs from H");
      return {AbsorptiveSystem(std::move(h), std::move(d), hbar),
              linops::StateVector(std::move(psi))};
    }
    throw ConfigError("model: unknown model '" + model + "'");
  };

  auto prepared = build();
  const std::string digest = digest_of(to_json(prepared.system, prepared.psi));
  return Loaded{std::move(prepared.system), std::move(prepared.psi), model, q,
                digest, ion};
}

Loaded load_file(const std::string& path, double hbar_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  Json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError("config: JSON parse failure in '" + path + "': " + e.what());
  }
  return load(doc, hbar_override);
}

}  // namespace qarrival::config
