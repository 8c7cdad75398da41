// Copyright 2026 The ghzdeco Authors
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

// Python bindings: the _core extension of the ghzdeco package.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ghzdeco/analysis.hpp"
#include "ghzdeco/circuit.hpp"
#include "ghzdeco/commands.hpp"
#include "ghzdeco/config.hpp"
#include "ghzdeco/error.hpp"
#include "ghzdeco/protocol.hpp"
#include "ghzdeco/simulator.hpp"
#include "ghzdeco/topology.hpp"

namespace py = pybind11;
using namespace ghzdeco;

namespace {

ParityDataset make_dataset(int n, const std::vector<double> &phi, const std::vector<double> &parity,
                           const std::optional<std::vector<double>> &delta_p, long long shots) {
    if (phi.size() != parity.size() || (delta_p && delta_p->size() != phi.size())) {
        throw Error(ErrorCategory::Validation, "phi, parity and delta_p must have equal lengths");
    }
    ParityDataset ds;
    ds.n_qubits = n;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        ds.points.push_back({phi[i], parity[i], delta_p ? (*delta_p)[i] : 0.0, delta_p ? shots : 0});
    }
    return ds;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "GHZ-state decoherence: routing, density-matrix simulation, protocol and analysis";

    static py::exception<Error> error_type(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error &e) {
            py::object inst = py::reinterpret_borrow<py::object>(error_type)(e.what());
            inst.attr("category") = std::string(category_name(e.category()));
            PyErr_SetObject(error_type.ptr(), inst.ptr());
        }
    });

    // ---- topology
    py::class_<CouplingGraph>(m, "CouplingGraph")
        .def(py::init<std::vector<int>, const std::vector<CouplingGraph::Edge> &, std::string>(), py::arg("nodes"),
             py::arg("edges"), py::arg("name") = "")
        .def_property_readonly("name", &CouplingGraph::name)
        .def_property_readonly("nodes", &CouplingGraph::nodes)
        .def_property_readonly("edges",
                               [](const CouplingGraph &g) {
                                   return std::vector<CouplingGraph::Edge>(g.edges().begin(), g.edges().end());
                               })
        .def("has_edge", &CouplingGraph::has_edge, py::arg("control"), py::arg("target"))
        .def("neighbors", &CouplingGraph::neighbors)
        .def("reversed", &CouplingGraph::reversed)
        .def("to_json", &CouplingGraph::to_json);

    py::class_<QubitChain>(m, "QubitChain")
        .def_readonly("qubits", &QubitChain::qubits)
        .def_readonly("reversal_count", &QubitChain::reversal_count)
        .def("__len__", &QubitChain::size)
        .def("__repr__", [](const QubitChain &c) {
            return "QubitChain(" + py::repr(py::cast(c.qubits)).cast<std::string>() +
                   ", reversal_count=" + std::to_string(c.reversal_count) + ")";
        });

    m.def("ibmqx5", &ibmqx5, py::return_value_policy::reference, "The bundled 16-qubit ibmqx5 coupling graph.");
    m.def("load_graph", &load_graph, py::arg("text"));
    m.def("find_chain", &find_chain, py::arg("graph"), py::arg("n"), py::arg("anchor") = std::nullopt);
    m.def("make_chain", &make_chain, py::arg("graph"), py::arg("qubits"));
    m.def("reference_chain", &reference_chain, py::arg("n"));

    // ---- circuits
    m.def("ghz_qasm",
          [](const CouplingGraph &g, const QubitChain &chain, int identity_layers, std::optional<double> phi) {
              Circuit c = build_ghz(g, chain);
              if (identity_layers > 0) c = append_delay(c, identity_layers);
              if (phi) c = append_analysis_and_measure(c, *phi);
              return emit_qasm(c);
          },
          py::arg("graph"), py::arg("chain"), py::arg("identity_layers") = 0, py::arg("phi") = std::nullopt,
          "OpenQASM 2.0 for GHZ preparation, optional delay and analysis rotation.");
    m.def("qasm_round_trip", [](const std::string &text) { return emit_qasm(parse_qasm(text)); }, py::arg("text"));
    m.def("analysis_rotation",
          [](double phi) {
              const auto r = analysis_rotation(phi);
              return py::make_tuple(Eigen::Matrix2cd(r.matrix),
                                    py::make_tuple(r.angles.theta, r.angles.phi, r.angles.lambda));
          },
          py::arg("phi"), "Returns (U(phi), (theta, phi_u3, lambda)).");
    m.def("u3_matrix", [](double t, double p, double l) { return Eigen::Matrix2cd(u3_matrix({t, p, l})); });

    // ---- noise and simulation
    py::class_<QubitNoise>(m, "QubitNoise")
        .def(py::init([](double t1, double t2, double r) { return QubitNoise{t1, t2, r}; }),
             py::arg("t1_us") = std::numeric_limits<double>::infinity(),
             py::arg("t2_us") = std::numeric_limits<double>::infinity(), py::arg("readout_error") = 0.0)
        .def_readwrite("t1_us", &QubitNoise::t1_us)
        .def_readwrite("t2_us", &QubitNoise::t2_us)
        .def_readwrite("readout_error", &QubitNoise::readout_error);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init<>())
        .def_static("uniform", &NoiseModel::uniform, py::arg("t1_us"), py::arg("t2_us"))
        .def_readwrite("default_qubit", &NoiseModel::default_qubit)
        .def_readwrite("per_qubit", &NoiseModel::per_qubit)
        .def_readwrite("collective_t2c_us", &NoiseModel::collective_t2c_us)
        .def_readwrite("p1", &NoiseModel::p1)
        .def_readwrite("p2", &NoiseModel::p2)
        .def_readwrite("gate_time_noise", &NoiseModel::gate_time_noise)
        .def("validate", &NoiseModel::validate);

    m.def("ghz_coherence",
          [](const CouplingGraph &g, const QubitChain &chain, double tau_ns, const NoiseModel &noise) {
              DensityMatrix rho = evolve(build_ghz(g, chain), noise);
              apply_delay(rho, tau_ns, noise);
              return coherence_of(rho);
          },
          py::arg("graph"), py::arg("chain"), py::arg("tau_ns") = 0.0, py::arg("noise") = NoiseModel{},
          "Coherence of the prepared GHZ state after a continuous delay.");

    // ---- protocol
    py::class_<ParityPoint>(m, "ParityPoint")
        .def_readonly("phi", &ParityPoint::phi)
        .def_readonly("parity", &ParityPoint::parity)
        .def_readonly("delta_p", &ParityPoint::delta_p)
        .def_readonly("shots", &ParityPoint::shots);
    py::class_<ParityDataset>(m, "ParityDataset")
        .def_readonly("n_qubits", &ParityDataset::n_qubits)
        .def_readonly("tau_ns", &ParityDataset::tau_ns)
        .def_readonly("points", &ParityDataset::points)
        .def("to_csv", [](const ParityDataset &d) { return dataset_to_csv(d); });

    m.def("phi_grid", &phi_grid, py::arg("points"));
    m.def("parity_scan",
          [](int n, double tau_ns, const NoiseModel &noise, const std::string &mode, long long shots,
             std::uint64_t seed, std::optional<std::vector<int>> chain, int phi_points, const std::string &delay) {
              ExperimentPlan plan;
              plan.graph = ibmqx5();
              plan.chain = chain ? make_chain(plan.graph, *chain) : make_chain(plan.graph, *reference_chain(n));
              plan.delays_ns = {tau_ns};
              plan.noise = noise;
              plan.mode = parse_mode(mode);
              plan.delay = parse_delay_realization(delay);
              plan.shots = shots;
              plan.seed = seed;
              plan.phi_grid_size = phi_points;
              py::gil_scoped_release release;
              return run_parity_scan(plan, tau_ns);
          },
          py::arg("n"), py::arg("tau_ns") = 0.0, py::arg("noise") = NoiseModel{}, py::arg("mode") = "exact",
          py::arg("shots") = 1000, py::arg("seed") = 0, py::arg("chain") = std::nullopt, py::arg("phi_points") = 0,
          py::arg("delay") = "identity_gates",
          "Parity scan over phi on ibmqx5 (default chain for N unless given).");

    // ---- analysis
    py::class_<SinusoidFit>(m, "SinusoidFit")
        .def_readonly("amplitude", &SinusoidFit::amplitude)
        .def_readonly("phase", &SinusoidFit::phase)
        .def_readonly("offset", &SinusoidFit::offset)
        .def_readonly("amplitude_se", &SinusoidFit::amplitude_se)
        .def_readonly("phase_se", &SinusoidFit::phase_se)
        .def_readonly("weighted", &SinusoidFit::weighted)
        .def("__call__", &SinusoidFit::evaluate);
    m.def("fit_parity",
          [](const ParityDataset &ds, bool with_offset) { return fit_parity(ds, {with_offset}); }, py::arg("dataset"),
          py::arg("with_offset") = false);
    m.def("fit_parity_arrays",
          [](int n, const std::vector<double> &phi, const std::vector<double> &parity,
             std::optional<std::vector<double>> delta_p, long long shots, bool with_offset) {
              return fit_parity(make_dataset(n, phi, parity, delta_p, shots), {with_offset});
          },
          py::arg("n"), py::arg("phi"), py::arg("parity"), py::arg("delta_p") = std::nullopt, py::arg("shots") = 1000,
          py::arg("with_offset") = false);

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("c_init", &DecayFit::c_init)
        .def_readonly("t2n_us", &DecayFit::t2n_us)
        .def_readonly("c_init_se", &DecayFit::c_init_se)
        .def_readonly("t2n_se_us", &DecayFit::t2n_se_us)
        .def_readonly("weighted", &DecayFit::weighted);
    m.def("fit_decay",
          [](const std::vector<double> &tau_ns, const std::vector<double> &coherence,
             std::optional<std::vector<double>> sigma) {
              if (tau_ns.size() != coherence.size() || (sigma && sigma->size() != tau_ns.size())) {
                  throw Error(ErrorCategory::Validation, "tau_ns, coherence and sigma must have equal lengths");
              }
              std::vector<DecayPoint> pts;
              for (std::size_t i = 0; i < tau_ns.size(); ++i) pts.push_back({tau_ns[i], coherence[i], sigma ? (*sigma)[i] : 0.0});
              return fit_decay(pts);
          },
          py::arg("tau_ns"), py::arg("coherence"), py::arg("sigma") = std::nullopt);

    py::class_<T2Value>(m, "T2Value")
        .def(py::init([](int n, double t2, double s) { return T2Value{n, t2, s}; }), py::arg("n_qubits"),
             py::arg("t2_us"), py::arg("sigma_us") = 0.0)
        .def_readonly("n_qubits", &T2Value::n_qubits)
        .def_readonly("t2_us", &T2Value::t2_us)
        .def_readonly("sigma_us", &T2Value::sigma_us);
    py::class_<RatioPoint>(m, "RatioPoint")
        .def(py::init([](int n, double r, double s) { return RatioPoint{n, r, s}; }), py::arg("n_qubits"),
             py::arg("ratio"), py::arg("sigma") = 0.0)
        .def_readonly("n_qubits", &RatioPoint::n_qubits)
        .def_readonly("ratio", &RatioPoint::ratio)
        .def_readonly("sigma", &RatioPoint::sigma);
    py::class_<Coefficient>(m, "Coefficient")
        .def_readonly("name", &Coefficient::name)
        .def_readonly("value", &Coefficient::value)
        .def_readonly("se", &Coefficient::se)
        .def_readonly("ci_low", &Coefficient::ci_low)
        .def_readonly("ci_high", &Coefficient::ci_high);
    py::class_<ScalingFit>(m, "ScalingFit")
        .def_property_readonly("model", [](const ScalingFit &f) { return std::string(scaling_model_name(f.model)); })
        .def_readonly("coefficients", &ScalingFit::coefficients)
        .def_readonly("r_squared", &ScalingFit::r_squared)
        .def_readonly("reduced_chi2", &ScalingFit::reduced_chi2)
        .def_readonly("dof", &ScalingFit::dof)
        .def_readonly("weighted", &ScalingFit::weighted)
        .def("coefficient", &ScalingFit::coefficient, py::arg("name"), py::return_value_policy::copy);

    m.def("propagate_ratios", &propagate_ratios, py::arg("values"));
    m.def("fit_scaling", &fit_scaling, py::arg("ratios"), py::arg("weighted") = false);
    m.def("predict_t2n_from_calibration", &predict_t2n_from_calibration, py::arg("t2_us_by_qubit"), py::arg("chain"));
    m.def("reference_t2_table", &reference_t2_table);

    // ---- commands
    m.def("route",
          [](int n, std::optional<std::vector<int>> chain) {
              const RouteReport r = cmd_route(ibmqx5(), n, chain);
              py::dict d;
              d["chain"] = r.chain.qubits;
              d["reversal_count"] = r.chain.reversal_count;
              d["gate_count"] = r.gate_count;
              d["qasm"] = r.qasm;
              return d;
          },
          py::arg("n"), py::arg("chain") = std::nullopt);
    m.def("simulate",
          [](const std::string &config_json, std::optional<std::string> output_dir) {
              RunConfig c = parse_run_config(config_json);
              if (output_dir) c.output_dir = *output_dir;
              py::gil_scoped_release release;
              return cmd_simulate(c).config_hash;
          },
          py::arg("config_json"), py::arg("output_dir") = std::nullopt,
          "Runs a JSON run configuration and returns its config hash.");
    m.def("analyze",
          [](const std::string &dir, bool force, bool svg, bool with_offset) {
              AnalyzeOptions o;
              o.force = force;
              o.svg = svg;
              o.with_offset = with_offset;
              return cmd_analyze(dir, o).text();
          },
          py::arg("dataset_dir"), py::arg("force") = false, py::arg("svg") = false, py::arg("with_offset") = false,
          "Fits a dataset directory, writes the report files and returns the text summary.");
    m.def("reproduce_paper", []() { return cmd_reproduce_paper().text(); },
          "Scaling analysis of the embedded hardware T2 table against the published statistics.");
}
