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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "qarrival/cli.hpp"
#include "qarrival/config.hpp"

using namespace qarrival;
using nlohmann::json;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& contents)
      : path("/tmp/qarrival_test_" + name) {
    std::ofstream(path) << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kFig1Config =
    R"({"model": "two_level", "omega": 2.0, "gamma": 2.8284271247461903})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("report on the near-minimal two-level point") {
  TempFile cfg("fig1.json", kFig1Config);
  const auto r = run_cli({"report", "--config", cfg.path});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["tool"] == "qarrival");
  CHECK(doc["data"]["assumption_holds"] == true);
  CHECK(std::abs(doc["data"]["ratio_mean"].get<double>() - 1.0277) < 1e-3);
  CHECK(std::abs(doc["data"]["ratio_var"].get<double>() - 1.41421356) < 1e-6);
  CHECK(doc["config_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
}

TEST_CASE("config errors name the failing field and exit with 1") {
  TempFile cfg("bad_d.json", R"({
    "H": [[[0,0],[1,0]],[[1,0],[0,0]]],
    "D": [[[1,0],[0,0]],[[0,0],[-0.1,0]]],
    "psi": [[1,0],[0,0]]
  })");
  const auto r = run_cli({"report", "--config", cfg.path});
  CHECK(r.code == 1);
  CHECK(r.err.find("negative") != std::string::npos);

  TempFile broken("broken.json", R"({
    "H": [[[0,0],[1,0],[0,0]],[[1,0],[0,0]]],
    "D": [[[0,0],[0,0]],[[0,0],[1,0]]],
    "psi": [[1,0],[0,0]]
  })");
  const auto r2 = run_cli({"report", "--config", broken.path});
  CHECK(r2.code == 1);
  CHECK(r2.err.find("H[0]") != std::string::npos);

  TempFile pair_err("pair.json", R"({
    "H": [[[0,0],[1,0]],[[1,0],[0,0]]],
    "D": [[[0,0],[0,0]],[[0,0],"x"]],
    "psi": [[1,0],[0,0]]
  })");
  const auto r3 = run_cli({"report", "--config", pair_err.path});
  CHECK(r3.code == 1);
  CHECK(r3.err.find("D[1][1]") != std::string::npos);
}

TEST_CASE("assumption violations exit with code 2") {
  TempFile cfg("constant.json", R"({
    "model": "constant",
    "H": [[[0,0],[1,0]],[[1,0],[0,0]]],
    "alpha": 0.5,
    "psi": [[1,0],[0,0]]
  })");
  const auto r = run_cli({"report", "--config", cfg.path});
  CHECK(r.code == 2);
  const json doc = json::parse(r.out);
  CHECK(doc["data"]["assumption_holds"] == false);
}

TEST_CASE("emitted configs round-trip to the same digest") {
  TempFile cfg("fig1_rt.json", kFig1Config);
  const auto r = run_cli({"report", "--config", cfg.path});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);

  const auto reloaded = config::load(doc["config"]);
  CHECK(reloaded.digest == doc["config_digest"].get<std::string>());
}

TEST_CASE("density table: wall value, monotone survival, units header") {
  TempFile cfg("fig1_density.json", kFig1Config);
  const auto r = run_cli({"density", "--config", cfg.path, "--t-max", "8",
                          "--step", "0.01"});
  REQUIRE(r.code == 0);

  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line.rfind("# qarrival", 0) == 0);
  std::getline(lines, line);
  CHECK(line.find("t (hbar/E)") != std::string::npos);

  double prev_s = 2.0;
  bool first_row = true;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#') continue;
    double t, p, s;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &p, &s) == 3);
    if (first_row) {
      CHECK(t == 0.0);
      CHECK(p == 0.0);   // D psi = 0 pins P(0) = 0
      first_row = false;
    }
    CHECK(s <= prev_s + 1e-12);
    prev_s = s;
    ++rows;
  }
  CHECK(rows == 801);
}

TEST_CASE("sweep finds the sqrt(2) optimum on a grid plus refinement") {
  TempFile cfg("sweep.json", kFig1Config);
  const auto r = run_cli({"sweep", "--config", cfg.path, "--from", "0.5",
                          "--to", "4", "--points", "200", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["data"].size() == 200);

  const double argmin =
      doc["minimizer"]["mean_objective"]["gamma_over_omega"].get<double>();
  const double min_value = doc["minimizer"]["mean_objective"]["value"].get<double>();
  CHECK(std::abs(argmin - 1.41421356) < 1e-3);
  CHECK(std::abs(min_value - 1.41421356) < 1e-4);
  const double var_value = doc["minimizer"]["var_objective"]["value"].get<double>();
  CHECK(std::abs(var_value - 0.70710678) < 1e-4);
}

TEST_CASE("ion sweep over omega23 finds the near-minimal drive strength") {
  // optimum at omega23* = sqrt(sqrt(2) omega12 gamma34) ~ 2 pi x 1.7316 MHz
  TempFile cfg("ion_sweep.json", R"({
    "model": "ion",
    "omega12": 628318.5307179587,
    "omega23": 10870176.13,
    "gamma34": 133203539.59
  })");
  const auto r = run_cli({"sweep", "--config", cfg.path, "--from", "6e6",
                          "--to", "1.6e7", "--points", "60", "--format",
                          "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  const double omega12 = 628318.5307179587;
  const double gamma34 = 133203539.59;
  const double expect = std::sqrt(std::sqrt(2.0) * omega12 * gamma34);
  const double found =
      doc["minimizer"]["mean_objective"]["sweep_value"].get<double>();
  CHECK(std::abs(found - expect) / expect < 1e-6);
  CHECK(std::abs(found / (2.0 * 3.14159265358979) - 1.7316e6) / 1.7316e6 <
        5e-3);
  CHECK(doc["minimizer"]["mean_objective"]["gamma_over_omega"].get<double>() ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
}

TEST_CASE("degenerate single-point sweep makes no minimizer claim") {
  TempFile cfg("sweep1.json", kFig1Config);
  const auto r = run_cli({"sweep", "--config", cfg.path, "--from", "2", "--to",
                          "2", "--points", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["data"].size() == 1);
  CHECK_FALSE(doc.contains("minimizer"));
}

TEST_CASE("montecarlo reports a KS verdict and honors the small-sample rule") {
  TempFile cfg("mc.json", kFig1Config);
  const auto r = run_cli({"montecarlo", "--config", cfg.path, "--n", "5000",
                          "--seed", "9"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["data"]["ks"]["verdict"] == "pass");
  CHECK(doc["data"]["no_click_count"].get<long long>() +
            doc["data"]["ks"]["n_clicks"].get<long long>() ==
        5000);

  const auto small = run_cli({"montecarlo", "--config", cfg.path, "--n", "150",
                              "--seed", "9"});
  REQUIRE(small.code == 0);
  CHECK(json::parse(small.out)["data"]["ks"]["verdict"] == "inconclusive");
}

TEST_CASE("montecarlo seed changes the sample, fixed seed reproduces it") {
  TempFile cfg("mc_seed.json", kFig1Config);
  const auto a = run_cli({"montecarlo", "--config", cfg.path, "--n", "500",
                          "--seed", "5"});
  const auto b = run_cli({"montecarlo", "--config", cfg.path, "--n", "500",
                          "--seed", "5"});
  const auto c = run_cli({"montecarlo", "--config", cfg.path, "--n", "500",
                          "--seed", "6"});
  CHECK(json::parse(a.out)["data"]["arrival_times"] ==
        json::parse(b.out)["data"]["arrival_times"]);
  CHECK(json::parse(a.out)["data"]["arrival_times"] !=
        json::parse(c.out)["data"]["arrival_times"]);
}

TEST_CASE("verify battery passes clean and fails loudly with the canary") {
  const auto r = run_cli({"verify", "--count", "12", "--gap-count", "40",
                          "--seed", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify: all checks passed") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);

  const auto again = run_cli({"verify", "--count", "12", "--gap-count", "40",
                              "--seed", "1"});
  CHECK(again.out == r.out);   // pinned seed: identical summary

  const auto canary = run_cli({"verify", "--count", "12", "--gap-count", "40",
                               "--seed", "1", "--inject-violation"});
  CHECK(canary.code == 1);
  CHECK(canary.out.find("FAIL") != std::string::npos);
}

TEST_CASE("groundstate subcommand emits raw and refined eigenvalues") {
  const auto r = run_cli({"groundstate", "--problem", "wall", "--points",
                          "1000", "--t-max", "15", "--k", "2", "--format",
                          "json"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(std::abs(doc["data"][0][2].get<double>() - 2.3381074) < 1e-5);
  CHECK(std::abs(doc["data"][1][3].get<double>() - 4.0879494) < 1e-6);
}

TEST_CASE("fit subcommand reports the certificate against the airy family") {
  TempFile cfg("fit.json", kFig1Config);
  const auto r = run_cli({"fit", "--config", cfg.path, "--kind", "airy"});
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["data"]["certificate_satisfied"] == true);
  CHECK(doc["data"]["distance"].get<double>() <=
        doc["data"]["bound"].get<double>());
}

TEST_CASE("environment variables mirror the global flags") {
  TempFile cfg("env.json", kFig1Config);
  setenv("QARRIVAL_SEED", "424242", 1);
  setenv("QARRIVAL_FORMAT", "json", 1);
  const auto r = run_cli({"report", "--config", cfg.path});
  unsetenv("QARRIVAL_SEED");
  unsetenv("QARRIVAL_FORMAT");
  REQUIRE(r.code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc["seed"].get<std::uint64_t>() == 424242);
}

TEST_CASE("outputs can be redirected to a file") {
  TempFile cfg("redirect.json", kFig1Config);
  const std::string out_path = "/tmp/qarrival_test_out.json";
  const auto r =
      run_cli({"report", "--config", cfg.path, "--out", out_path});
  REQUIRE(r.code == 0);
  std::ifstream in(out_path);
  REQUIRE(in.good());
  json doc;
  in >> doc;
  CHECK(doc["command"] == "report");
  std::remove(out_path.c_str());
}

}  // TEST_SUITE
