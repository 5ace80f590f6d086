// Copyright 2026 The nonloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Python bindings for the core library, exposed as nonloc._core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nonloc/error.h"
#include "nonloc/hardy.h"
#include "nonloc/io.h"
#include "nonloc/polytope.h"
#include "nonloc/search.h"
#include "nonloc/symmetric.h"

namespace py = pybind11;
using namespace nonloc;

namespace {

py::array_t<double> table_array(const JointDistribution &d) {
    auto dim = static_cast<py::ssize_t>(d.dim());
    py::array_t<double> out({dim, dim});
    auto raw = d.raw();
    std::copy(raw.begin(), raw.end(), out.mutable_data());
    return out;
}

JointDistribution table_from_array(int n, py::array_t<double, py::array::c_style | py::array::forcecast> a) {
    return JointDistribution(n, std::vector<double>(a.data(), a.data() + a.size()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Hardy-type tests of genuine multipartite nonlocality";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<OptimizerDidNotConverge>(m, "OptimizerDidNotConverge", base.ptr());
    py::register_exception<SignalingDistribution>(m, "SignalingDistribution", base.ptr());
    py::register_exception<DegenerateSettings>(m, "DegenerateSettings", base.ptr());
    py::register_exception<NonUniqueSolution>(m, "NonUniqueSolution", base.ptr());
    py::register_exception<VanishingSuccess>(m, "VanishingSuccess", base.ptr());
    py::register_exception<IdenticallyZeroPolynomial>(m, "IdenticallyZeroPolynomial", base.ptr());
    py::register_exception<IdenticallyZeroF>(m, "IdenticallyZeroF", base.ptr());
    py::register_exception<DegenerateX>(m, "DegenerateX", base.ptr());
    py::register_exception<SingularDenominator>(m, "SingularDenominator", base.ptr());
    py::register_exception<NotEntangled>(m, "NotEntangled", base.ptr());
    py::register_exception<NumericalFailure>(m, "NumericalFailure", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());

    // States
    py::class_<PureState>(m, "PureState")
        .def(py::init<int, std::vector<cplx>>(), py::arg("n"), py::arg("amplitudes"))
        .def_property_readonly("n", &PureState::n)
        .def_property_readonly("amplitudes", &PureState::vector)
        .def_static("basis", &PureState::basis, py::arg("n"), py::arg("index"));

    py::class_<SymmetricState>(m, "SymmetricState")
        .def(py::init<int, std::vector<cplx>>(), py::arg("n"), py::arg("h"))
        .def_property_readonly("n", &SymmetricState::n)
        .def_property_readonly("h", [](const SymmetricState &s) {
            return std::vector<cplx>(s.h().begin(), s.h().end());
        })
        .def("is_magic", &SymmetricState::is_magic, py::arg("tol") = 1e-10)
        .def_static("ghz", &SymmetricState::ghz, py::arg("n"), py::arg("theta"))
        .def_static("w", &SymmetricState::w, py::arg("n"))
        .def_static("product_zero", &SymmetricState::product_zero, py::arg("n"));

    m.def("dicke_expand", &dicke_expand);
    m.def("genuine_entanglement_check", &genuine_entanglement_check, py::arg("psi"), py::arg("eps"));
    m.def("haar_random_pure", &haar_random_pure, py::arg("n"), py::arg("seed"));
    m.def("haar_random_symmetric", &haar_random_symmetric, py::arg("n"), py::arg("seed"));
    m.def("closest_product_state", [](const SymmetricState &s) {
        auto cp = closest_product_state(s);
        return py::make_tuple(Eigen::Vector2cd(cp.ray), cp.overlap);
    });
    m.def("to_magic_basis", [](const SymmetricState &s) {
        auto mb = to_magic_basis(s);
        return py::make_tuple(mb.state, Eigen::Matrix2cd(mb.rotation));
    });

    // Measurements
    py::class_<Ray>(m, "Ray")
        .def(py::init<cplx, cplx>(), py::arg("c0"), py::arg("c1"))
        .def_static("from_param", &Ray::from_param, py::arg("x"))
        .def_static("from_bloch", &Ray::from_bloch, py::arg("t"), py::arg("phi"))
        .def_property_readonly("c0", &Ray::c0)
        .def_property_readonly("c1", &Ray::c1);

    py::class_<MeasurementSettings>(m, "MeasurementSettings")
        .def(py::init([](const std::vector<std::pair<Ray, Ray>> &pairs) {
                 std::vector<PartySettings> ps;
                 for (const auto &[a, b] : pairs) {
                     ps.push_back({a, b});
                 }
                 return MeasurementSettings(std::move(ps));
             }),
             py::arg("pairs"))
        .def_static("uniform", &MeasurementSettings::uniform, py::arg("n"), py::arg("a"), py::arg("b"))
        .def_property_readonly("n", &MeasurementSettings::n)
        .def("party", [](const MeasurementSettings &s, int p) {
            if (p < 0 || p >= s.n()) {
                throw py::index_error("party out of range");
            }
            return py::make_tuple(s.party(p).a, s.party(p).b);
        });

    m.def("settings_from_angles", [](int n, const std::vector<double> &a) { return settings_from_angles(n, a); });

    py::class_<JointDistribution>(m, "JointDistribution")
        .def(py::init(&table_from_array), py::arg("n"), py::arg("table"))
        .def_property_readonly("n", &JointDistribution::n)
        .def_property_readonly("table", &table_array)
        .def("at", &JointDistribution::at)
        .def_static("uniform", &JointDistribution::uniform);

    m.def("born_distribution", py::overload_cast<const PureState &, const MeasurementSettings &>(&born_distribution));
    m.def("ns_residual", &ns_residual);

    // Hardy test
    py::class_<HardyReport>(m, "HardyReport")
        .def_readonly("pivot", &HardyReport::pivot)
        .def_readonly("p_success", &HardyReport::p_success)
        .def_readonly("zero_residuals", &HardyReport::zero_residuals)
        .def_readonly("passed", &HardyReport::passed);

    m.def(
        "hardy_conditions",
        [](const JointDistribution &d, int pivot, double eps_zero, double delta_pos, bool standard) {
            return hardy_conditions(d, pivot, {eps_zero, delta_pos},
                                    standard ? HardyVariant::Standard : HardyVariant::Genuine);
        },
        py::arg("d"), py::arg("pivot") = 0, py::arg("eps_zero") = 1e-9, py::arg("delta_pos") = 1e-6,
        py::arg("standard") = false);
    m.def("inequality1", &inequality1, py::arg("d"), py::arg("pivot") = 0);
    m.def("inequality2", &inequality2, py::arg("d"));
    m.def("construct_hardy_state", [](const MeasurementSettings &s) { return construct_hardy_state(s).phi; });

    // Symmetric solver
    py::class_<SymmetricSolution>(m, "SymmetricSolution")
        .def_readonly("x", &SymmetricSolution::x)
        .def_readonly("y1", &SymmetricSolution::y1)
        .def_readonly("y", &SymmetricSolution::y)
        .def_readonly("x1", &SymmetricSolution::x1)
        .def_readonly("settings", &SymmetricSolution::settings)
        .def_readonly("p_success", &SymmetricSolution::p_success)
        .def_readonly("excluded_x", &SymmetricSolution::excluded_x);

    m.def("solve_settings", &solve_settings, py::arg("s"), py::arg("x"));
    m.def("solve_auto", &solve_auto, py::arg("s"));
    m.def("ghz_closed_form", &ghz_closed_form, py::arg("n"), py::arg("theta"), py::arg("x"));
    m.def("w_closed_form", &w_closed_form, py::arg("n"), py::arg("x"));
    m.def("degenerate_x_roots", &degenerate_x_roots);
    m.def("f_poly_roots", &f_poly_roots, py::arg("s"), py::arg("w"));
    m.def("phase_pick", &phase_pick);

    // Polytopes
    py::class_<ModelVertexSet>(m, "ModelVertexSet")
        .def_readonly("model", &ModelVertexSet::model)
        .def_readonly("n", &ModelVertexSet::n)
        .def("__len__", [](const ModelVertexSet &vs) { return vs.columns.size(); })
        .def("column", [](const ModelVertexSet &vs, std::size_t i) {
            if (i >= vs.columns.size()) {
                throw py::index_error("column out of range");
            }
            return table_array(vs.columns[i]);
        });
    m.def("deterministic_local_vertices", &deterministic_local_vertices, py::arg("n"));
    m.def("bilocal_ns_vertices", &bilocal_ns_vertices);
    m.def("ns_bipartite_vertex_set", &ns_bipartite_vertex_set);

    py::class_<LPOutcome>(m, "LPOutcome")
        .def_readonly("feasible", &LPOutcome::feasible)
        .def_readonly("weights", &LPOutcome::weights)
        .def_readonly("certificate", &LPOutcome::certificate)
        .def_readonly("margin", &LPOutcome::margin)
        .def_readonly("reconstruction_error", &LPOutcome::reconstruction_error);
    m.def("lp_membership", &lp_membership, py::arg("d"), py::arg("vs"));
    m.def("classify", [](const JointDistribution &d) {
        auto c = classify(d);
        return py::make_tuple(to_string(c.label), c.local, c.bilocal);
    });

    // Search
    py::class_<SearchConfig>(m, "SearchConfig")
        .def(py::init<>())
        .def_readwrite("multistarts", &SearchConfig::multistarts)
        .def_readwrite("max_iters", &SearchConfig::max_iters)
        .def_readwrite("mu", &SearchConfig::mu)
        .def_readwrite("eps_zero", &SearchConfig::eps_zero)
        .def_readwrite("delta_pos", &SearchConfig::delta_pos)
        .def_readwrite("seed", &SearchConfig::seed);

    py::class_<SearchResult>(m, "SearchResult")
        .def_readonly("found", &SearchResult::found)
        .def_readonly("settings", &SearchResult::settings)
        .def_readonly("p_success", &SearchResult::p_success)
        .def_readonly("max_residual", &SearchResult::max_residual)
        .def_readonly("starts", &SearchResult::starts);
    m.def("find_settings", &find_settings, py::arg("psi"), py::arg("cfg") = SearchConfig{},
          py::call_guard<py::gil_scoped_release>());

    py::class_<ExperimentSummary>(m, "ExperimentSummary")
        .def_readonly("n", &ExperimentSummary::n)
        .def_readonly("count", &ExperimentSummary::count)
        .def_readonly("passed", &ExperimentSummary::passed)
        .def_readonly("failed", &ExperimentSummary::failed)
        .def("records_csv", [](const ExperimentSummary &s) {
            std::ostringstream out;
            io::write_experiment_csv(out, s);
            return out.str();
        });
    m.def("random_experiment", &random_experiment, py::arg("n"), py::arg("count"), py::arg("seed"),
          py::arg("cfg") = SearchConfig{}, py::arg("lp_subsample") = 20, py::arg("jobs") = 1,
          py::call_guard<py::gil_scoped_release>());
}
