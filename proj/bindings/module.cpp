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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qarrival/arrival.hpp"
#include "qarrival/groundstate.hpp"
#include "qarrival/models.hpp"
#include "qarrival/verify.hpp"

namespace py = pybind11;
using namespace qarrival;

namespace {

linops::StateVector as_state(const Vector& psi) {
  return linops::StateVector::normalized(psi);
}

py::dict stats_dict(const arrival::ArrivalStats& s) {
  py::dict d;
  d["p"] = s.p;
  d["mean_T"] = s.mean_time;
  d["second_T"] = s.second_moment;
  d["std_T"] = s.std_time;
  d["mean_E"] = s.mean_energy;
  d["std_E"] = s.std_energy;
  d["ratio_var"] = s.ratio_var;
  d["ratio_mean"] = s.ratio_mean;
  d["method"] =
      s.method == arrival::Method::closed_form ? "closed_form" : "quadrature";
  d["assumption_holds"] = s.assumption_holds;
  d["relation_violation"] = s.relation_violation;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "arrival-time statistics for absorptive quantum dynamics";

  py::register_exception<Error>(m, "QarrivalError");

  py::class_<AbsorptiveSystem>(m, "AbsorptiveSystem")
      .def(py::init<Matrix, Matrix, double>(), py::arg("hamiltonian"),
           py::arg("absorber"), py::arg("hbar") = 1.0)
      .def_property_readonly("dim", &AbsorptiveSystem::dim)
      .def_property_readonly("hbar", &AbsorptiveSystem::hbar)
      .def_property_readonly("hamiltonian", &AbsorptiveSystem::hamiltonian)
      .def_property_readonly("absorber", &AbsorptiveSystem::absorber)
      .def_property_readonly("generator", &AbsorptiveSystem::generator)
      .def_property_readonly("ode_fallback", &AbsorptiveSystem::ode_fallback);

  m.def("evolve",
        [](const AbsorptiveSystem& sys, const Vector& psi, double t) {
          return evolve(sys, psi, t);
        },
        py::arg("system"), py::arg("psi"), py::arg("t"));
  m.def("propagator", &propagator, py::arg("system"), py::arg("t"));
  m.def("survival",
        [](const AbsorptiveSystem& sys, const Vector& psi, double t) {
          return survival(sys, as_state(psi), t);
        },
        py::arg("system"), py::arg("psi"), py::arg("t"));
  m.def("asymptotic_operator",
        [](const AbsorptiveSystem& sys) {
          const auto a = asymptotic_operator(sys);
          return py::make_tuple(a.r, a.converged, a.horizon);
        },
        py::arg("system"));
  m.def("absorption_probability",
        [](const AbsorptiveSystem& sys, const Vector& psi) {
          return absorption_probability(sys, as_state(psi));
        },
        py::arg("system"), py::arg("psi"));
  m.def("dilation_trajectory",
        [](const AbsorptiveSystem& sys, const Vector& psi, double t) {
          return dilation_trajectory(sys, as_state(psi), t);
        },
        py::arg("system"), py::arg("psi"), py::arg("t"));

  m.def("density",
        [](const AbsorptiveSystem& sys, const Vector& psi, double t) {
          return arrival::density(sys, as_state(psi), t);
        },
        py::arg("system"), py::arg("psi"), py::arg("t"));
  m.def("moment",
        [](const AbsorptiveSystem& sys, const Vector& psi, int n,
           const std::string& method) {
          return arrival::moment(sys, as_state(psi), n,
                                 method == "quadrature"
                                     ? arrival::Method::quadrature
                                     : arrival::Method::closed_form);
        },
        py::arg("system"), py::arg("psi"), py::arg("n"),
        py::arg("method") = "closed_form");
  m.def("energy_stats",
        [](const AbsorptiveSystem& sys, const Vector& psi) {
          const auto e = arrival::energy_stats(sys, as_state(psi));
          return py::make_tuple(e.mean, e.stddev);
        },
        py::arg("system"), py::arg("psi"));
  m.def("uncertainty_report",
        [](const AbsorptiveSystem& sys, const Vector& psi,
           const std::string& method) {
          return stats_dict(arrival::uncertainty_report(
              sys, as_state(psi),
              method == "quadrature" ? arrival::Method::quadrature
                                     : arrival::Method::closed_form));
        },
        py::arg("system"), py::arg("psi"), py::arg("method") = "closed_form");

  m.def("airy",
        [](double x) {
          const auto e = minimality::airy(x);
          return py::make_tuple(e.ai, e.ai_prime);
        },
        py::arg("x"));
  m.def("airy_negative_zeros", &minimality::airy_negative_zeros, py::arg("n"));
  m.def("constants", [] {
    const auto& c = minimality::constants();
    py::dict d;
    d["C"] = c.C;
    d["gamma_airy"] = c.gamma_airy;
    d["gamma_gauss"] = c.gamma_gauss;
    d["x0"] = c.x0;
    d["y0"] = c.y0;
    d["y1"] = c.y1;
    return d;
  });
  m.def("minimal_density",
        [](const std::string& kind, double lam, double tau, double t) {
          return minimality::minimal_density(
              kind == "airy" ? minimality::Kind::airy : minimality::Kind::gaussian,
              lam, tau, t);
        },
        py::arg("kind"), py::arg("scale"), py::arg("shift"), py::arg("t"));
  m.def("fit_minimal",
        [](const AbsorptiveSystem& sys, const Vector& psi,
           const std::string& kind) {
          const auto state = as_state(psi);
          const auto stats = arrival::uncertainty_report(sys, state);
          const auto fit = arrival::fit_minimal_report(
              sys, state,
              kind == "airy" ? minimality::Kind::airy : minimality::Kind::gaussian,
              stats);
          py::dict d;
          d["kind"] = kind;
          d["scale"] = fit.scale;
          d["shift"] = fit.shift;
          d["distance"] = fit.distance;
          d["epsilon"] = fit.epsilon;
          d["bound"] = fit.bound;
          d["boundary_hit"] = fit.boundary_hit;
          return d;
        },
        py::arg("system"), py::arg("psi"), py::arg("kind") = "airy");

  m.def("two_level",
        [](double omega, double gamma, double hbar) {
          auto p = models::two_level(omega, gamma, hbar);
          return py::make_tuple(std::move(p.system), Vector(p.psi.amplitudes()));
        },
        py::arg("omega"), py::arg("gamma"), py::arg("hbar") = 1.0);
  m.def("constant_absorber", &models::constant_absorber, py::arg("hamiltonian"),
        py::arg("alpha"), py::arg("hbar") = 1.0);
  m.def("ion_effective",
        [](double omega12, double omega23, double gamma34, double q, double hbar) {
          auto p = models::ion_effective({omega12, omega23, gamma34, q}, hbar);
          return py::make_tuple(std::move(p.system), Vector(p.psi.amplitudes()));
        },
        py::arg("omega12"), py::arg("omega23"), py::arg("gamma34"),
        py::arg("q") = 1.0, py::arg("hbar") = 1.0);
  m.def("random_system",
        [](int dim, int kernel_dim, std::uint64_t seed) {
          auto p = models::random_system(dim, kernel_dim, seed);
          return py::make_tuple(std::move(p.system), Vector(p.psi.amplitudes()));
        },
        py::arg("dim"), py::arg("kernel_dim"), py::arg("seed"));
  m.def("quantum_jump_sample",
        [](const AbsorptiveSystem& sys, const Vector& psi, long long n, double q,
           std::uint64_t seed, double t_max) {
          const auto s = models::quantum_jump_sample(sys, as_state(psi), n, q,
                                                     seed, t_max);
          py::dict d;
          d["arrival_times"] = s.arrival_times;
          d["no_click_count"] = s.no_click_count;
          d["seed"] = s.seed;
          d["n_requested"] = s.n_requested;
          return d;
        },
        py::arg("system"), py::arg("psi"), py::arg("n"), py::arg("q"),
        py::arg("seed"), py::arg("t_max"));

  m.def("oscillator_spectrum",
        [](double t_max, int points, int k) {
          return groundstate::oscillator_spectrum({-t_max, t_max, points}, k);
        },
        py::arg("t_max"), py::arg("points"), py::arg("k"));
  m.def("wall_linear_spectrum",
        [](double t_max, int points, int k) {
          return groundstate::wall_linear_spectrum({0.0, t_max, points}, k);
        },
        py::arg("t_max"), py::arg("points"), py::arg("k"));
  m.def("gap_lemma_check",
        [](const Matrix& a, const Matrix& rho) {
          const auto r = groundstate::gap_lemma_check(a, rho);
          py::dict d;
          d["a0"] = r.a0;
          d["a1"] = r.a1;
          d["alpha"] = r.alpha;
          d["lhs"] = r.lhs;
          d["rhs"] = r.rhs;
          d["fidelity_deficit"] = r.fidelity_deficit;
          d["holds"] = r.holds;
          return d;
        },
        py::arg("a"), py::arg("rho"));

  m.attr("__version__") = "0.1.0";
}
