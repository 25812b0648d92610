// Copyright 2026 The QMCMC Authors
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
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qmcmc/channel.hpp"
#include "qmcmc/errors.hpp"
#include "qmcmc/experiments.hpp"
#include "qmcmc/hamiltonians.hpp"
#include "qmcmc/observables.hpp"
#include "qmcmc/results_io.hpp"
#include "qmcmc/schedule.hpp"
#include "qmcmc/trajectory.hpp"

namespace py = pybind11;
using namespace qmcmc;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Thermal-state preparation by digitally simulated dissipative dynamics";

  py::register_exception<Error>(m, "QmcmcError", PyExc_RuntimeError);

  py::class_<PauliString>(m, "PauliString")
      .def(py::init([](double c, std::string letters) { return PauliString{c, std::move(letters)}; }),
           py::arg("coefficient"), py::arg("letters"))
      .def_readwrite("coefficient", &PauliString::coefficient)
      .def_readwrite("letters", &PauliString::letters);

  py::class_<HamiltonianSpec>(m, "HamiltonianSpec")
      .def_readonly("qubit_count", &HamiltonianSpec::qubit_count)
      .def_readonly("terms", &HamiltonianSpec::terms)
      .def_readonly("label", &HamiltonianSpec::label)
      .def("is_diagonal", &HamiltonianSpec::is_diagonal)
      .def("matrix", [](const HamiltonianSpec& s) { return to_matrix(s); })
      .def("__repr__", [](const HamiltonianSpec& s) { return "<HamiltonianSpec " + s.label + ">"; });

  py::class_<Edge>(m, "Edge")
      .def(py::init([](int j, int k, double w) { return Edge{j, k, w}; }), py::arg("j"), py::arg("k"),
           py::arg("weight"))
      .def_readwrite("j", &Edge::j)
      .def_readwrite("k", &Edge::k)
      .def_readwrite("weight", &Edge::weight);

  py::class_<GraphInstance>(m, "GraphInstance")
      .def(py::init([](std::vector<double> fields, std::vector<Edge> edges) {
             GraphInstance g{static_cast<int>(fields.size()), std::move(fields), std::move(edges)};
             g.validate();
             return g;
           }),
           py::arg("local_fields"), py::arg("edges"))
      .def_readonly("vertex_count", &GraphInstance::vertex_count)
      .def_readonly("local_fields", &GraphInstance::local_fields)
      .def_readonly("edges", &GraphInstance::edges);

  m.def("build_tfim", &build_tfim, py::arg("n"), py::arg("coupling"), py::arg("field"));
  m.def("build_graph_ising", &build_graph_ising, py::arg("graph"));
  m.def("parse_hamiltonian", [](const std::string& text) { return parse_hamiltonian(text); }, py::arg("text"));
  m.def("graph_field_preset", [](const std::string& name) { return graph_field_preset(name); }, py::arg("name"));
  m.def("generate_er_instance", &generate_er_instance, py::arg("n"), py::arg("p_e"), py::arg("seed"));
  m.def("to_matrix", &to_matrix, py::arg("spec"));
  m.def("spectral_width", &spectral_width, py::arg("spec"));
  m.def("thermal_state", &thermal_state, py::arg("spec"), py::arg("beta"));
  m.def("gibbs_distribution", &gibbs_distribution, py::arg("spec"), py::arg("beta"));

  py::class_<ProtocolConfig>(m, "ProtocolConfig")
      .def(py::init([](const HamiltonianSpec& spec, double g, double beta, std::optional<double> omega_m,
                       int n_trotter, int n_cycle) {
             ProtocolConfig c;
             c.g = g;
             c.beta = beta;
             c.omega_m = omega_m ? *omega_m : spectral_width(spec);
             c.n_trotter = n_trotter;
             c.n_cycle = n_cycle;
             c.ancilla_map = one_to_one_ancillas(spec.qubit_count);
             c.validate(spec.qubit_count);
             return c;
           }),
           py::arg("spec"), py::arg("g") = 0.005, py::arg("beta") = 1.0, py::arg("omega_m") = py::none(),
           py::arg("n_trotter") = 5000, py::arg("n_cycle") = 500)
      .def_readwrite("g", &ProtocolConfig::g)
      .def_readwrite("beta", &ProtocolConfig::beta)
      .def_readwrite("omega_m", &ProtocolConfig::omega_m)
      .def_readwrite("n_trotter", &ProtocolConfig::n_trotter)
      .def_readwrite("n_cycle", &ProtocolConfig::n_cycle)
      .def_readwrite("ancilla_map", &ProtocolConfig::ancilla_map)
      .def("period_time", &ProtocolConfig::period_time);

  py::class_<HierarchyReport>(m, "HierarchyReport")
      .def_readonly("drive_ratio", &HierarchyReport::drive_ratio)
      .def_readonly("coupling_ratio", &HierarchyReport::coupling_ratio)
      .def("ok", &HierarchyReport::ok)
      .def("describe", &HierarchyReport::describe);
  m.def("validate_hierarchy", &validate_hierarchy, py::arg("cfg"), py::arg("h_s_norm"), py::arg("threshold") = 10.0);

  py::class_<CycleMap>(m, "CycleMap")
      .def_property_readonly("matrix", [](const CycleMap& c) { return c.superoperator.matrix; })
      .def_readonly("omegas", &CycleMap::omegas)
      .def("apply", [](const CycleMap& c, const ComplexMatrix& rho) { return c.superoperator.apply(rho); })
      .def("min_choi_eigenvalue", [](const CycleMap& c) { return c.superoperator.min_choi_eigenvalue(); });
  m.def("build_cycle_map", &build_cycle_map, py::arg("spec"), py::arg("cfg"), py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("steady_state", [](const CycleMap& c) { return steady_state(c).rho; }, py::arg("cycle_map"));

  py::class_<SpectralGap>(m, "SpectralGap")
      .def_readonly("gap", &SpectralGap::gap)
      .def_readonly("unique", &SpectralGap::unique)
      .def_readonly("lambda_1", &SpectralGap::lambda_1)
      .def_readonly("lambda_2", &SpectralGap::lambda_2);
  m.def("spectral_gap", &spectral_gap, py::arg("cycle_map"));

  m.def("fidelity", &fidelity, py::arg("rho"), py::arg("sigma"));
  m.def("tvd", &tvd, py::arg("p"), py::arg("q"));
  m.def("transverse_magnetization", &transverse_magnetization, py::arg("rho"), py::arg("n_s"));
  m.def("basis_distribution", &basis_distribution, py::arg("rho"));

  py::class_<SampleSet>(m, "SampleSet")
      .def_readonly("qubit_count", &SampleSet::qubit_count)
      .def_readonly("counts", &SampleSet::counts)
      .def_readonly("shots", &SampleSet::shots)
      .def_readonly("seed", &SampleSet::seed)
      .def("distribution", &SampleSet::distribution)
      .def("__eq__", [](const SampleSet& a, const SampleSet& b) { return a == b; });
  m.def("sample_gibbs", &sample_gibbs, py::arg("spec"), py::arg("cfg"), py::arg("burn_in_cycles"), py::arg("shots"),
        py::arg("seed"), py::arg("workers") = 0, py::call_guard<py::gil_scoped_release>());

  py::class_<ResultRow>(m, "ResultRow")
      .def_readonly("experiment", &ResultRow::experiment)
      .def_readonly("n_s", &ResultRow::n_s)
      .def_readonly("hj", &ResultRow::hj)
      .def_readonly("beta", &ResultRow::beta)
      .def_readonly("p_e", &ResultRow::p_e)
      .def_readonly("infidelity", &ResultRow::infidelity)
      .def_readonly("tvd", &ResultRow::tvd)
      .def_readonly("magnetization_exact", &ResultRow::magnetization_exact)
      .def_readonly("magnetization_algorithm", &ResultRow::magnetization_algorithm)
      .def_readonly("magnetization_error", &ResultRow::magnetization_error)
      .def_readonly("spectral_gap", &ResultRow::spectral_gap)
      .def_readonly("unique_fixed_point", &ResultRow::unique_fixed_point)
      .def_readonly("lambda1_deviation", &ResultRow::lambda1_deviation)
      .def_readonly("error", &ResultRow::error);

  m.def(
      "thermalize",
      [](const HamiltonianSpec& spec, const ProtocolConfig& cfg, const std::vector<double>& betas, int workers) {
        ResultRow t;
        t.experiment = "thermalize";
        return thermalize(spec, cfg, betas, t, StateMode::SteadyState, 0, 0, workers);
      },
      py::arg("spec"), py::arg("cfg"), py::arg("betas"), py::arg("workers") = 0,
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "results_csv",
      [](const std::vector<ResultRow>& rows) {
        std::ostringstream os;
        emit_results(rows, OutputFormat::Csv, os);
        return os.str();
      },
      py::arg("rows"));
}
