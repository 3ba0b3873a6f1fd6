// Copyright 2026 The stabtel Authors
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

// Python bindings. Reports cross the boundary as JSON strings; the package
// __init__ decodes them.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stabtel/commands.h"
#include "stabtel/dense_sim.h"
#include "stabtel/problem_io.h"
#include "stabtel/protocol.h"

namespace py = pybind11;
using namespace stabtel;

namespace {

std::vector<PauliOperator> parse_all(const std::vector<std::string> &ops, int64_t d) {
    std::vector<PauliOperator> out;
    for (const auto &s : ops) {
        out.push_back(PauliOperator::from_string(s, d));
    }
    return out;
}

std::vector<int64_t> entries(const ResidueVector &v) {
    return {v.entries().begin(), v.entries().end()};
}

OutcomeMode parse_mode(const std::string &mode) {
    if (mode == "auto") {
        return OutcomeMode::kAuto;
    }
    if (mode == "enumerate") {
        return OutcomeMode::kEnumerate;
    }
    if (mode == "sample") {
        return OutcomeMode::kSample;
    }
    throw std::invalid_argument("mode must be auto, enumerate or sample, got \"" + mode + "\"");
}

ProtocolSpec protocol_for(const ProblemSpec &problem) {
    auto spec = synthesize_from_report(problem, check_problem(problem));
    if (!spec) {
        throw std::runtime_error("no decomposition with t>0 found");
    }
    return *spec;
}

}  // namespace

PYBIND11_MODULE(_stabtel, m) {
    m.doc() = "Qudit stabilizer toolkit for perfect many-to-one teleportation";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<PauliOperator>(m, "PauliOperator")
        .def_static("from_string", &PauliOperator::from_string, py::arg("text"), py::arg("d"))
        .def_property_readonly("d", &PauliOperator::d)
        .def_property_readonly("num_qudits", &PauliOperator::num_qudits)
        .def_property_readonly("phase", &PauliOperator::phase)
        .def_property_readonly("x", [](const PauliOperator &g) { return entries(g.x()); })
        .def_property_readonly("z", [](const PauliOperator &g) { return entries(g.z()); })
        .def("__mul__", &PauliOperator::operator*)
        .def("__eq__", &PauliOperator::operator==)
        .def("__str__", &PauliOperator::str)
        .def("__repr__", [](const PauliOperator &g) { return "PauliOperator('" + g.str() + "')"; })
        .def("matrix", [](const PauliOperator &g) { return pauli_matrix(g); });

    m.def("commutation_exponent", &commutation_exponent, py::arg("g"), py::arg("h"));
    m.def("in_g_prime", &in_g_prime, py::arg("g"));

    m.def(
        "projector_rank",
        [](const std::vector<std::string> &generators, int64_t d, std::size_t n) {
            return projector_rank(build_group(parse_all(generators, d), d, n));
        },
        py::arg("generators"), py::arg("d"), py::arg("n"));

    m.def(
        "receiver_unitary",
        [](const std::vector<std::string> &zbar, const std::vector<std::string> &xbar, int64_t d, std::size_t q) {
            return synthesize_receiver_unitary(parse_all(zbar, d), parse_all(xbar, d), d, q);
        },
        py::arg("zbar"), py::arg("xbar"), py::arg("d"), py::arg("q"));

    m.def("normalize_problem", [](const std::string &text) { return problem_to_json(parse_problem(text)); },
          py::arg("text"));
    m.def("demo_problem", [](const std::string &name) {
        auto demo = demo_problem(name);
        if (!demo) {
            throw std::invalid_argument("unknown demo \"" + name + "\"");
        }
        return problem_to_json(problem_from_demo(*demo));
    });

    m.def("check_json", [](const std::string &text) { return format_check(check_problem(parse_problem(text)), true); },
          py::arg("problem"));
    m.def("synthesize_json", [](const std::string &text) { return protocol_to_json(protocol_for(parse_problem(text))); },
          py::arg("problem"));
    m.def(
        "simulate_json",
        [](const std::string &text, std::size_t trials, uint64_t seed, const std::string &mode) {
            ProtocolSpec spec;
            std::vector<MessageInput> inputs;
            if (looks_like_protocol(text)) {
                spec = parse_protocol(text);
            } else {
                ProblemSpec problem = parse_problem(text);
                spec = protocol_for(problem);
                inputs = problem.inputs;
            }
            SimulateRequest req;
            req.trials = std::max<std::size_t>(trials, 1);
            req.seed = seed;
            req.options.mode = parse_mode(mode);
            req.inputs = inputs;
            py::gil_scoped_release release;
            return format_simulation(simulate_trials(spec, req), true);
        },
        py::arg("problem_or_protocol"), py::arg("trials") = 1, py::arg("seed") = 1, py::arg("mode") = "auto");
}
