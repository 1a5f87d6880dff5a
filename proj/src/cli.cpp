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

#include "qarrival/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qarrival/arrival.hpp"
#include "qarrival/config.hpp"
#include "qarrival/groundstate.hpp"
#include "qarrival/models.hpp"
#include "qarrival/numerics.hpp"
#include "qarrival/verify.hpp"

namespace qarrival::cli {

namespace {

using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct GlobalOpts {
  std::string config_path;
  std::string out_path;
  std::string format;   // "json" or "csv"; commands pick a default
  double hbar = 0.0;    // 0: take the config value
  std::uint64_t seed = 20260811;
  double tol = 1e-11;
  Clock::time_point start = Clock::now();
};

double elapsed_s(const GlobalOpts& g) {
  return std::chrono::duration<double>(Clock::now() - g.start).count();
}

std::ostream& sink(const GlobalOpts& g, std::ofstream& file, std::ostream& out) {
  if (g.out_path.empty()) return out;
  file.open(g.out_path);
  if (!file) throw Error("cannot open output file '" + g.out_path + "'");
  return file;
}

Json envelope(const GlobalOpts& g, const std::string& command,
              const std::string& digest) {
  Json doc;
  doc["tool"] = "qarrival";
  doc["version"] = kVersion;
  doc["command"] = command;
  doc["config_digest"] = digest;
  doc["seed"] = g.seed;
  return doc;
}

void emit_json(const GlobalOpts& g, std::ostream& out, Json doc) {
  doc["wall_time_s"] = elapsed_s(g);
  std::ofstream file;
  sink(g, file, out) << doc.dump(2) << "\n";
}

// CSV: run-record comment lines (digest included), a units header row, rows.
void emit_csv(const GlobalOpts& g, std::ostream& out, const std::string& command,
              const std::string& digest, const std::string& header,
              const std::vector<std::string>& rows) {
  std::ofstream file;
  std::ostream& os = sink(g, file, out);
  os << "# qarrival " << kVersion << " " << command << " digest=" << digest
     << " seed=" << g.seed << " wall_time_s=" << elapsed_s(g) << "\n";
  os << header << "\n";
  for (const auto& r : rows) os << r << "\n";
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

config::Loaded load_config(const GlobalOpts& g) {
  if (g.config_path.empty())
    throw ConfigError("--config PATH is required for this subcommand");
  return config::load_file(g.config_path, g.hbar);
}

arrival::ArrivalStats report_with_fallback(const AbsorptiveSystem& sys,
                                           const linops::StateVector& psi,
                                           double quad_rel_tol = 1e-11) {
  try {
    return arrival::uncertainty_report(sys, psi, arrival::Method::closed_form);
  } catch (const DefectiveMatrix&) {
    return arrival::uncertainty_report(sys, psi, arrival::Method::quadrature,
                                       quad_rel_tol);
  }
}

Json stats_to_json(const arrival::ArrivalStats& s) {
  Json j;
  j["p"] = s.p;
  j["mean_T"] = s.mean_time;
  j["second_T"] = s.second_moment;
  j["std_T"] = s.std_time;
  j["mean_E"] = s.mean_energy;
  j["std_E"] = s.std_energy;
  j["ratio_var"] = s.ratio_var;
  j["ratio_mean"] = s.ratio_mean;
  j["method"] =
      s.method == arrival::Method::closed_form ? "closed_form" : "quadrature";
  j["assumption_holds"] = s.assumption_holds;
  j["relations_applicable"] = s.assumption_holds;
  j["relation_violation"] = s.relation_violation;
  return j;
}

int cmd_report(const GlobalOpts& g, std::ostream& out) {
  const auto loaded = load_config(g);
  const auto stats = report_with_fallback(loaded.system, loaded.psi, g.tol);

  Json doc = envelope(g, "report", loaded.digest);
  doc["hbar"] = loaded.system.hbar();
  doc["data"] = stats_to_json(stats);
  doc["config"] = config::to_json(loaded.system, loaded.psi);
  if (g.format == "csv") {
    std::vector<std::string> rows = {
        fmt(stats.p) + "," + fmt(stats.mean_time) + "," + fmt(stats.std_time) +
        "," + fmt(stats.mean_energy) + "," + fmt(stats.std_energy) + "," +
        fmt(stats.ratio_var) + "," + fmt(stats.ratio_mean) + "," +
        (stats.assumption_holds ? "yes" : "no")};
    emit_csv(g, out, "report", loaded.digest,
             "p (1),mean_T (hbar/E),std_T (hbar/E),mean_E (E),std_E (E),"
             "ratio_var (1),ratio_mean (1),assumption_holds",
             rows);
  } else {
    emit_json(g, out, doc);
  }
  return stats.assumption_holds ? 0 : 2;
}

int cmd_density(const GlobalOpts& g, std::ostream& out, double t_min,
                double t_max, double step) {
  const auto loaded = load_config(g);
  if (t_max <= 0.0) t_max = arrival::horizon_time(loaded.system, loaded.psi);
  if (step <= 0.0) step = (t_max - t_min) / 400.0;

  std::vector<std::string> rows;
  Json table = Json::array();
  for (double t = t_min; t <= t_max + 0.5 * step; t += step) {
    const double p_t = arrival::density(loaded.system, loaded.psi, t);
    const double s_t = survival(loaded.system, loaded.psi, t);
    rows.push_back(fmt(t) + "," + fmt(p_t) + "," + fmt(s_t));
    table.push_back({t, p_t, s_t});
  }
  if (g.format == "json") {
    Json doc = envelope(g, "density", loaded.digest);
    doc["columns"] = {"t (hbar/E)", "P (E/hbar)", "S (1)"};
    doc["data"] = std::move(table);
    emit_json(g, out, doc);
  } else {
    emit_csv(g, out, "density", loaded.digest, "t (hbar/E),P (E/hbar),S (1)",
             rows);
  }
  return 0;
}

int cmd_sweep(const GlobalOpts& g, std::ostream& out, double from, double to,
              int points) {
  const auto loaded = load_config(g);
  if (loaded.model != "two_level" && loaded.model != "ion")
    throw ConfigError("sweep: config must name a two_level or ion model");
  if (points < 1) throw ConfigError("sweep: --points must be >= 1");

  // The swept variable is gamma/omega for the two-level model and omega23
  // (rad/s) for the ion scheme; both reduce to the two-level family.
  const double hbar = loaded.system.hbar();
  const double omega = 2.0 * loaded.system.hamiltonian()(0, 1).real() / hbar;
  const bool is_ion = loaded.ion.has_value();

  auto ratio_of = [&](double x) {
    if (!is_ion) return x;
    models::IonScheme s = *loaded.ion;
    s.omega23 = x;
    return s.effective_gamma() / s.omega12;
  };
  auto stats_at = [&](double x) {
    // the exceptional point gamma = 2 omega is defective; quadrature covers it
    if (is_ion) {
      models::IonScheme s = *loaded.ion;
      s.omega23 = x;
      const auto prepared = models::ion_effective(s, hbar);
      return report_with_fallback(prepared.system, prepared.psi);
    }
    const auto prepared = models::two_level(omega, x * omega, hbar);
    return report_with_fallback(prepared.system, prepared.psi);
  };

  std::vector<std::string> rows;
  Json table = Json::array();
  double best_x = from;
  double best_value = 1e300;
  for (int i = 0; i < points; ++i) {
    const double x = (points == 1) ? from : from + (to - from) * i / (points - 1);
    const auto s = stats_at(x);
    const double mean_te = s.mean_time * s.std_energy / hbar;
    const double var_te = s.std_time * s.std_energy / hbar;
    const std::string prefix = is_ion ? fmt(x) + "," : "";
    rows.push_back(prefix + fmt(ratio_of(x)) + "," + fmt(mean_te) + "," +
                   fmt(var_te));
    if (is_ion)
      table.push_back({x, ratio_of(x), mean_te, var_te});
    else
      table.push_back({x, mean_te, var_te});
    if (mean_te < best_value) {
      best_value = mean_te;
      best_x = x;
    }
  }

  const char* header = is_ion
      ? "omega23 (rad/s),gamma_over_omega (1),mean_T*std_E/hbar (1),"
        "std_T*std_E/hbar (1)"
      : "gamma_over_omega (1),mean_T*std_E/hbar (1),std_T*std_E/hbar (1)";

  Json doc = envelope(g, "sweep", loaded.digest);
  if (is_ion)
    doc["columns"] = {"omega23 (rad/s)", "gamma_over_omega (1)",
                      "mean_T*std_E/hbar (1)", "std_T*std_E/hbar (1)"};
  else
    doc["columns"] = {"gamma_over_omega (1)", "mean_T*std_E/hbar (1)",
                      "std_T*std_E/hbar (1)"};
  doc["data"] = std::move(table);

  if (points > 1) {
    // refine both objectives inside the bracketing grid cells
    const double span = (to - from) / (points - 1);
    const auto mean_obj = [&](double x) {
      const auto s = stats_at(x);
      return s.mean_time * s.std_energy;
    };
    const auto var_obj = [&](double x) {
      const auto s = stats_at(x);
      return s.std_time * s.std_energy;
    };
    const double lo = std::max(from, best_x - span);
    const double hi = std::min(to, best_x + span);
    const auto min_mean = numerics::golden_section_min(mean_obj, lo, hi, 1e-10);
    const auto min_var = numerics::golden_section_min(var_obj, lo, hi, 1e-10);
    doc["minimizer"] = {
        {"mean_objective",
         {{"sweep_value", min_mean.x},
          {"gamma_over_omega", ratio_of(min_mean.x)},
          {"value", min_mean.value / hbar}}},
        {"var_objective",
         {{"sweep_value", min_var.x},
          {"gamma_over_omega", ratio_of(min_var.x)},
          {"value", min_var.value / hbar}}}};
  }

  if (g.format == "csv") {
    if (doc.contains("minimizer"))
      rows.push_back("# minimizer sweep_value=" +
                     fmt(doc["minimizer"]["mean_objective"]["sweep_value"]
                             .get<double>()) +
                     " min_mean_TdE=" +
                     fmt(doc["minimizer"]["mean_objective"]["value"].get<double>()));
    emit_csv(g, out, "sweep", loaded.digest, header, rows);
  } else {
    emit_json(g, out, doc);
  }
  return 0;
}

int cmd_montecarlo(const GlobalOpts& g, std::ostream& out, long long n,
                   double q, double t_max) {
  const auto loaded = load_config(g);
  if (n < 100) throw ConfigError("montecarlo: --n must be at least 100");
  if (q <= 0.0) q = loaded.q;

  if (t_max <= 0.0)
    t_max = arrival::horizon_time(loaded.system, loaded.psi);

  const auto samples =
      models::quantum_jump_sample(loaded.system, loaded.psi, n, q, g.seed, t_max);
  const auto ks = models::ks_against_density(loaded.system, loaded.psi, samples);

  const char* verdict = ks.verdict == models::KsResult::Verdict::pass ? "pass"
                        : ks.verdict == models::KsResult::Verdict::fail
                            ? "fail"
                            : "inconclusive";

  if (g.format == "csv") {
    std::vector<std::string> rows;
    rows.reserve(samples.arrival_times.size());
    for (double t : samples.arrival_times) rows.push_back(fmt(t));
    rows.push_back("# no_click_count=" + std::to_string(samples.no_click_count) +
                   " ks_statistic=" + fmt(ks.statistic) +
                   " ks_critical=" + fmt(ks.critical) + " verdict=" + verdict);
    emit_csv(g, out, "montecarlo", loaded.digest, "arrival_time (hbar/E)", rows);
  } else {
    Json doc = envelope(g, "montecarlo", loaded.digest);
    doc["data"] = {{"n_requested", samples.n_requested},
                   {"no_click_count", samples.no_click_count},
                   {"q", q},
                   {"t_max", t_max},
                   {"arrival_times", samples.arrival_times},
                   {"ks",
                    {{"statistic", ks.statistic},
                     {"critical_1pct", ks.critical},
                     {"n_clicks", ks.n_clicks},
                     {"verdict", verdict}}}};
    emit_json(g, out, doc);
  }
  if (!g.out_path.empty())
    out << "montecarlo: clicks=" << ks.n_clicks
        << " no_click=" << samples.no_click_count << " ks=" << fmt(ks.statistic)
        << " critical=" << fmt(ks.critical) << " verdict=" << verdict << "\n";
  return 0;
}

int cmd_verify(const GlobalOpts& g, std::ostream& out, int count, int dim_min,
               int dim_max, int gap_count, bool inject) {
  verify::Options options;
  options.count = count;
  options.dim_min = dim_min;
  options.dim_max = dim_max;
  options.gap_count = gap_count;
  options.seed = g.seed;
  options.inject_violation = inject;

  const auto systems = verify::run_system_battery(options);
  const auto gaps = verify::run_gap_battery(options);

  bool all_passed = true;
  Json checks = Json::array();
  for (const auto* report : {&systems, &gaps}) {
    for (const auto& c : report->checks) {
      all_passed = all_passed && c.failed == 0;
      out << (c.failed == 0 ? "PASS " : "FAIL ") << c.name
          << ": checked=" << c.checked << " failed=" << c.failed
          << " worst_margin=" << fmt(c.worst_margin) << "\n";
      checks.push_back({{"name", c.name},
                        {"checked", c.checked},
                        {"failed", c.failed},
                        {"worst_margin", c.worst_margin}});
    }
  }
  out << (all_passed ? "verify: all checks passed\n"
                     : "verify: VIOLATIONS found\n");
  if (!g.out_path.empty()) {
    Json doc = envelope(g, "verify", "none");
    doc["data"] = std::move(checks);
    emit_json(g, out, doc);
  }
  return all_passed ? 0 : 1;
}

int cmd_groundstate(const GlobalOpts& g, std::ostream& out,
                    const std::string& problem, int points, double t_max,
                    int k) {
  groundstate::RefinedSpectrum spec;
  std::vector<double> reference(k);
  if (problem == "oscillator") {
    spec = groundstate::oscillator_spectrum_refined({-t_max, t_max, points}, k);
    for (int i = 0; i < k; ++i) reference[i] = 2.0 * i + 1.0;
  } else if (problem == "wall") {
    spec = groundstate::wall_linear_spectrum_refined({0.0, t_max, points}, k);
    const auto zeros = minimality::airy_negative_zeros(k);
    for (int i = 0; i < k; ++i) reference[i] = -zeros[i];
  } else {
    throw ConfigError("groundstate: --problem must be oscillator or wall");
  }

  std::vector<std::string> rows;
  Json table = Json::array();
  for (int i = 0; i < k; ++i) {
    rows.push_back(std::to_string(i) + "," + fmt(spec.raw[i]) + "," +
                   fmt(spec.refined[i]) + "," + fmt(reference[i]));
    table.push_back({i, spec.raw[i], spec.refined[i], reference[i]});
  }
  if (g.format == "json") {
    Json doc = envelope(g, "groundstate", "none");
    doc["columns"] = {"index", "eigenvalue (1)", "richardson (1)",
                      "continuum (1)"};
    doc["data"] = std::move(table);
    emit_json(g, out, doc);
  } else {
    emit_csv(g, out, "groundstate", "none",
             "index,eigenvalue (1),richardson (1),continuum (1)", rows);
  }
  return 0;
}

int cmd_fit(const GlobalOpts& g, std::ostream& out, const std::string& kind_name) {
  const auto loaded = load_config(g);
  const auto kind = kind_name == "airy" ? minimality::Kind::airy
                                        : minimality::Kind::gaussian;
  const auto stats = report_with_fallback(loaded.system, loaded.psi, g.tol);
  const auto fit = arrival::fit_minimal_report(loaded.system, loaded.psi, kind,
                                               stats);

  Json doc = envelope(g, "fit", loaded.digest);
  doc["data"] = {{"kind", kind_name},
                 {"scale", fit.scale},
                 {"shift", fit.shift},
                 {"distance", fit.distance},
                 {"boundary_hit", fit.boundary_hit},
                 {"assumption_holds", stats.assumption_holds}};
  if (stats.assumption_holds) {
    doc["data"]["epsilon"] = fit.epsilon;
    doc["data"]["bound"] = fit.bound;
    doc["data"]["certificate_satisfied"] = fit.distance <= fit.bound;
  } else {
    doc["data"]["epsilon"] = nullptr;
    doc["data"]["bound"] = nullptr;
  }
  emit_json(g, out, doc);
  return stats.assumption_holds ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  GlobalOpts g;
  CLI::App app{"arrival-time statistics for absorptive quantum dynamics"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  // global options may appear after the subcommand name
  app.fallthrough();

  app.add_option("--config", g.config_path, "path to a JSON system config")
      ->envname("QARRIVAL_CONFIG");
  app.add_option("--out", g.out_path, "write output to this file")
      ->envname("QARRIVAL_OUT");
  app.add_option("--format", g.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv", ""}))
      ->envname("QARRIVAL_FORMAT");
  app.add_option("--hbar", g.hbar, "override the config's hbar")
      ->envname("QARRIVAL_HBAR");
  app.add_option("--seed", g.seed, "seed for stochastic subcommands")
      ->envname("QARRIVAL_SEED");
  app.add_option("--tol", g.tol,
                 "relative tolerance for quadrature-path moments")
      ->envname("QARRIVAL_TOL");

  auto* report = app.add_subcommand("report", "uncertainty-relation report");

  double t_min = 0.0, t_max = 0.0, step = 0.0;
  auto* density = app.add_subcommand("density", "arrival-time density table");
  density->add_option("--t-min", t_min, "grid start");
  density->add_option("--t-max", t_max, "grid end (0: auto horizon)");
  density->add_option("--step", step, "grid step (0: span/400)");

  double from = 0.5, to = 4.0;
  int points = 200;
  auto* sweep = app.add_subcommand(
      "sweep", "sweep a model parameter and locate the product minima");
  sweep->add_option("--from", from,
                    "first value: gamma/omega (two_level) or omega23 rad/s (ion)");
  sweep->add_option("--to", to, "last swept value");
  sweep->add_option("--points", points, "number of grid points");

  long long n = 10000;
  double q = 0.0, mc_t_max = 0.0;
  auto* mc = app.add_subcommand("montecarlo", "first-jump arrival sampling");
  mc->add_option("--n", n, "number of trials");
  mc->add_option("--q", q, "detection efficiency (0: from config)");
  mc->add_option("--t-max", mc_t_max, "sampling horizon (0: auto)");

  int count = 500, dim_min = 2, dim_max = 8, gap_count = 2000;
  bool inject = false;
  auto* verify_cmd = app.add_subcommand("verify", "randomized theorem battery");
  verify_cmd->add_option("--count", count, "number of random systems");
  verify_cmd->add_option("--dim-min", dim_min, "smallest dimension");
  verify_cmd->add_option("--dim-max", dim_max, "largest dimension");
  verify_cmd->add_option("--gap-count", gap_count, "gap-lemma instances");
  verify_cmd->add_flag("--inject-violation", inject)->group("");

  std::string problem = "oscillator";
  int gs_points = 2000, gs_k = 2;
  double gs_t_max = 10.0;
  auto* gs = app.add_subcommand("groundstate", "discretized ground-state solver");
  gs->add_option("--problem", problem, "oscillator or wall");
  gs->add_option("--points", gs_points, "interior grid points");
  gs->add_option("--t-max", gs_t_max, "grid endpoint");
  gs->add_option("--k", gs_k, "number of eigenvalues");

  std::string kind = "airy";
  auto* fit = app.add_subcommand("fit", "fit a minimal distribution");
  fit->add_option("--kind", kind, "gaussian or airy")
      ->check(CLI::IsMember({"gaussian", "airy"}));

  std::vector<const char*> argv;
  argv.push_back("qarrival");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (report->parsed()) return cmd_report(g, out);
    if (density->parsed()) return cmd_density(g, out, t_min, t_max, step);
    if (sweep->parsed()) return cmd_sweep(g, out, from, to, points);
    if (mc->parsed()) return cmd_montecarlo(g, out, n, q, mc_t_max);
    if (verify_cmd->parsed())
      return cmd_verify(g, out, count, dim_min, dim_max, gap_count, inject);
    if (gs->parsed())
      return cmd_groundstate(g, out, problem, gs_points, gs_t_max, gs_k);
    if (fit->parsed()) return cmd_fit(g, out, kind);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "no subcommand given\n";
  return 1;
}

}  // namespace qarrival::cli
