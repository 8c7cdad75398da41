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

#include "ghzdeco/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ghzdeco/error.hpp"
#include "json.hpp"

namespace ghzdeco {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string read_text_file(const std::string &path, std::string_view what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCategory::Io, "cannot open " + std::string(what) + " '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json(std::string_view text, std::string_view what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCategory::Parse, std::string(what) + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

[[noreturn]] void field_error(const std::string &path, const std::string &what) {
    throw Error(ErrorCategory::Validation, path + ": " + what);
}

double read_number(const json &j, const std::string &path) {
    if (!j.is_number()) field_error(path, "expected a number");
    return j.get<double>();
}

/// Time constant: a number, or null / "inf" for an infinite time.
double read_time(const json &j, const std::string &path) {
    if (j.is_null()) return kInf;
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity")) return kInf;
    const double t = read_number(j, path);
    if (!(t > 0.0)) field_error(path, "must be positive");
    return t;
}

json write_time(double t) { return std::isfinite(t) ? json(t) : json("inf"); }

long long read_integer(const json &j, const std::string &path) {
    if (!j.is_number_integer()) field_error(path, "expected an integer");
    return j.get<long long>();
}

int read_label_key(const std::string &key, const std::string &path) {
    try {
        std::size_t used = 0;
        int v = std::stoi(key, &used);
        if (used == key.size()) return v;
    } catch (const std::logic_error &) {
    }
    field_error(path, "key '" + key + "' is not an integer");
}

QubitNoise read_qubit(const json &j, const std::string &path, QubitNoise base) {
    if (!j.is_object()) field_error(path, "expected an object");
    for (const auto &[key, value] : j.items()) {
        const std::string p = path + "." + key;
        if (key == "t1_us") {
            base.t1_us = read_time(value, p);
        } else if (key == "t2_us") {
            base.t2_us = read_time(value, p);
        } else if (key == "readout_error") {
            base.readout_error = read_number(value, p);
        } else {
            field_error(p, "unknown field");
        }
    }
    return base;
}

json qubit_json(const QubitNoise &q) {
    return {{"t1_us", write_time(q.t1_us)}, {"t2_us", write_time(q.t2_us)}, {"readout_error", q.readout_error}};
}

NoiseModel read_noise(const json &j, const std::string &path) {
    if (!j.is_object()) field_error(path, "expected an object");
    NoiseModel m;
    for (const auto &[key, value] : j.items()) {
        const std::string p = path + "." + key;
        if (key == "t1_us") {
            m.default_qubit.t1_us = read_time(value, p);
        } else if (key == "t2_us") {
            m.default_qubit.t2_us = read_time(value, p);
        } else if (key == "readout_error") {
            m.default_qubit.readout_error = read_number(value, p);
        } else if (key == "collective_t2c_us") {
            const double t = read_time(value, p);
            if (std::isfinite(t)) m.collective_t2c_us = t;
        } else if (key == "p1") {
            m.p1 = read_number(value, p);
        } else if (key == "p2") {
            m.p2 = read_number(value, p);
        } else if (key == "gate_time_noise") {
            if (!value.is_boolean()) field_error(p, "expected true or false");
            m.gate_time_noise = value.get<bool>();
        } else if (key == "cnot_errors") {
            if (!value.is_array()) field_error(p, "expected an array of [control, target, p]");
            for (std::size_t i = 0; i < value.size(); ++i) {
                const std::string pi = p + "[" + std::to_string(i) + "]";
                const auto &e = value[i];
                if (!e.is_array() || e.size() != 3) field_error(pi, "expected [control, target, p]");
                const auto c = static_cast<int>(read_integer(e[0], pi));
                const auto t = static_cast<int>(read_integer(e[1], pi));
                m.per_edge_p2[{c, t}] = read_number(e[2], pi);
            }
        } else if (key != "qubits") {
            field_error(p, "unknown field");
        }
    }
    if (j.contains("qubits")) {
        const auto &qs = j["qubits"];
        if (!qs.is_object()) field_error(path + ".qubits", "expected an object keyed by qubit label");
        for (const auto &[key, value] : qs.items()) {
            const std::string p = path + ".qubits." + key;
            m.per_qubit[read_label_key(key, p)] = read_qubit(value, p, m.default_qubit);
        }
    }
    m.validate();  // messages already carry the noise.* path
    return m;
}

json noise_json(const NoiseModel &m) {
    json j = qubit_json(m.default_qubit);
    j["collective_t2c_us"] = m.collective_t2c_us ? json(*m.collective_t2c_us) : json("inf");
    j["p1"] = m.p1;
    j["p2"] = m.p2;
    j["gate_time_noise"] = m.gate_time_noise;
    json qs = json::object();
    for (const auto &[label, q] : m.per_qubit) qs[std::to_string(label)] = qubit_json(q);
    j["qubits"] = qs;
    json edges = json::array();
    for (const auto &[edge, p] : m.per_edge_p2) edges.push_back({edge.first, edge.second, p});
    j["cnot_errors"] = edges;
    return j;
}

std::vector<double> read_number_list(const json &j, const std::string &path) {
    if (!j.is_array()) field_error(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

bool is_bundled_ibmqx5(const CouplingGraph &g) {
    return g.nodes() == ibmqx5().nodes() && g.edges() == ibmqx5().edges();
}

}  // namespace

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : data) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::map<int, double> CalibrationFile::t2_by_qubit() const {
    std::map<int, double> out;
    for (const auto &[label, q] : qubits) out[label] = q.t2_us;
    return out;
}

CalibrationFile parse_calibration(std::string_view text) {
    const json doc = parse_json(text, "calibration");
    if (!doc.is_object()) field_error("calibration", "top level must be an object");
    CalibrationFile cal;
    for (const auto &[key, value] : doc.items()) {
        const std::string p = "calibration." + key;
        if (key == "timestamp") {
            if (!value.is_string()) field_error(p, "expected a string");
            cal.timestamp = value.get<std::string>();
        } else if (key == "qubits") {
            if (!value.is_object()) field_error(p, "expected an object keyed by qubit label");
            for (const auto &[label, q] : value.items()) {
                const std::string qp = p + "." + label;
                QubitNoise noise = read_qubit(q, qp, QubitNoise{});
                if (!(noise.t1_us > 0.0) || !(noise.t2_us > 0.0)) field_error(qp, "times must be positive");
                if (noise.t2_us > 2.0 * noise.t1_us) field_error(qp, "t2_us exceeds 2 * t1_us");
                if (!(noise.readout_error >= 0.0 && noise.readout_error <= 1.0)) {
                    field_error(qp + ".readout_error", "must lie in [0, 1]");
                }
                cal.qubits[read_label_key(label, qp)] = noise;
            }
        } else if (key == "cnot_errors") {
            if (!value.is_array()) field_error(p, "expected an array");
            for (std::size_t i = 0; i < value.size(); ++i) {
                const std::string ep = p + "[" + std::to_string(i) + "]";
                const auto &e = value[i];
                if (!e.is_object()) field_error(ep, "expected {control, target, error}");
                const int c = static_cast<int>(read_integer(e.value("control", json()), ep + ".control"));
                const int t = static_cast<int>(read_integer(e.value("target", json()), ep + ".target"));
                const double err = read_number(e.value("error", json()), ep + ".error");
                if (!(err >= 0.0 && err <= 1.0)) field_error(ep + ".error", "must lie in [0, 1]");
                cal.cnot_error[{c, t}] = err;
            }
        } else {
            field_error(p, "unknown field");
        }
    }
    return cal;
}

CalibrationFile load_calibration_file(const std::string &path) {
    try {
        return parse_calibration(read_text_file(path, "calibration file"));
    } catch (const Error &e) {
        if (e.category() == ErrorCategory::Io) throw;
        throw Error(e.category(), path + ": " + e.what());
    }
}

RunConfig parse_run_config(std::string_view text) {
    const json doc = parse_json(text, "config");
    if (!doc.is_object()) field_error("config", "top level must be an object");
    RunConfig c;
    for (const auto &[key, value] : doc.items()) {
        const std::string p = key;
        if (key == "graph_file") {
            if (!value.is_string()) field_error(p, "expected a path string");
            c.graph_file = value.get<std::string>();
        } else if (key == "n_min") {
            c.n_min = static_cast<int>(read_integer(value, p));
        } else if (key == "n_max") {
            c.n_max = static_cast<int>(read_integer(value, p));
        } else if (key == "chain_policy") {
            const auto name = value.is_string() ? value.get<std::string>() : std::string{};
            if (name == "reference") {
                c.chain_policy = ChainPolicy::Reference;
            } else if (name == "minimal") {
                c.chain_policy = ChainPolicy::Minimal;
            } else {
                field_error(p, "expected \"reference\" or \"minimal\"");
            }
        } else if (key == "chains") {
            if (!value.is_object()) field_error(p, "expected an object keyed by N");
            for (const auto &[n, list] : value.items()) {
                const std::string cp = p + "." + n;
                std::vector<int> qubits;
                if (!list.is_array()) field_error(cp, "expected an array of qubit labels");
                for (std::size_t i = 0; i < list.size(); ++i) {
                    qubits.push_back(static_cast<int>(read_integer(list[i], cp + "[" + std::to_string(i) + "]")));
                }
                c.chains[read_label_key(n, cp)] = std::move(qubits);
            }
        } else if (key == "noise") {
            c.noise = read_noise(value, p);
        } else if (key == "calibration_file") {
            if (!value.is_string()) field_error(p, "expected a path string");
            c.calibration_file = value.get<std::string>();
        } else if (key == "delays_ns") {
            if (value.is_array()) {
                c.delays_ns[0] = read_number_list(value, p);
            } else if (value.is_object()) {
                for (const auto &[n, list] : value.items()) {
                    const int idx = n == "default" ? 0 : read_label_key(n, p + "." + n);
                    c.delays_ns[idx] = read_number_list(list, p + "." + n);
                }
            } else {
                field_error(p, "expected an array or an object keyed by N");
            }
        } else if (key == "delay_span_ns") {
            if (value.is_number()) {
                c.delay_span_ns[0] = value.get<double>();
            } else if (value.is_object()) {
                for (const auto &[n, span] : value.items()) {
                    const int idx = n == "default" ? 0 : read_label_key(n, p + "." + n);
                    c.delay_span_ns[idx] = read_number(span, p + "." + n);
                }
            } else {
                field_error(p, "expected a number or an object keyed by N");
            }
        } else if (key == "delay_points") {
            c.delay_points = static_cast<int>(read_integer(value, p));
        } else if (key == "shots") {
            c.shots = read_integer(value, p);
        } else if (key == "mode") {
            if (!value.is_string()) field_error(p, "expected \"exact\" or \"sampled\"");
            try {
                c.mode = parse_mode(value.get<std::string>());
            } catch (const Error &e) {
                field_error(p, e.what());
            }
        } else if (key == "delay_realization") {
            if (!value.is_string()) field_error(p, "expected \"identity_gates\" or \"continuous\"");
            try {
                c.delay = parse_delay_realization(value.get<std::string>());
            } catch (const Error &e) {
                field_error(p, e.what());
            }
        } else if (key == "phi_grid_size") {
            c.phi_grid_size = static_cast<int>(read_integer(value, p));
        } else if (key == "seed") {
            if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
                field_error(p, "expected a nonnegative integer");
            }
            c.seed = value.get<std::uint64_t>();
        } else if (key == "workers") {
            c.workers = static_cast<int>(read_integer(value, p));
        } else if (key == "output_dir") {
            if (!value.is_string()) field_error(p, "expected a path string");
            c.output_dir = value.get<std::string>();
        } else if (key == "durations_ns") {
            if (!value.is_object()) field_error(p, "expected an object");
            for (const auto &[dk, dv] : value.items()) {
                const std::string dp = p + "." + dk;
                const double d = read_number(dv, dp);
                if (!(d >= 0.0)) field_error(dp, "durations must be nonnegative");
                if (dk == "single_qubit") {
                    c.durations.single_qubit_ns = d;
                } else if (dk == "cnot") {
                    c.durations.cnot_ns = d;
                } else if (dk == "identity") {
                    if (!(d > 0.0)) field_error(dp, "identity duration must be positive");
                    c.durations.identity_ns = d;
                } else if (dk == "measure") {
                    c.durations.measure_ns = d;
                } else {
                    field_error(dp, "unknown field");
                }
            }
        } else {
            field_error(p, "unknown field");
        }
    }
    return c;
}

RunConfig load_run_config(const std::string &path) {
    try {
        return parse_run_config(read_text_file(path, "config file"));
    } catch (const Error &e) {
        if (e.category() == ErrorCategory::Io) throw;
        throw Error(e.category(), path + ": " + e.what());
    }
}

std::string RunConfig::canonical_json() const {
    json j;
    j["graph"] = resolve_graph(*this).to_json();
    j["n_min"] = n_min;
    j["n_max"] = n_max;
    j["chain_policy"] = chain_policy == ChainPolicy::Reference ? "reference" : "minimal";
    json chains_j = json::object();
    for (const auto &[n, q] : chains) chains_j[std::to_string(n)] = q;
    j["chains"] = chains_j;
    j["noise"] = noise_json(noise);
    if (!calibration_file.empty()) {
        j["calibration_sha"] = fnv1a_hex(read_text_file(calibration_file, "calibration file"));
    }
    json delays_j = json::object();
    for (const auto &[n, d] : delays_ns) delays_j[std::to_string(n)] = d;
    j["delays_ns"] = delays_j;
    json span_j = json::object();
    for (const auto &[n, s] : delay_span_ns) span_j[std::to_string(n)] = s;
    j["delay_span_ns"] = span_j;
    j["delay_points"] = delay_points;
    j["shots"] = shots;
    j["mode"] = mode_name(mode);
    j["delay_realization"] = delay_realization_name(delay);
    j["phi_grid_size"] = phi_grid_size;
    j["seed"] = seed;
    j["durations_ns"] = {{"single_qubit", durations.single_qubit_ns},
                         {"cnot", durations.cnot_ns},
                         {"identity", durations.identity_ns},
                         {"measure", durations.measure_ns}};
    return j.dump();
}

std::string RunConfig::hash() const { return fnv1a_hex(canonical_json()); }

std::vector<double> delay_grid(double span_ns, int points, DelayRealization delay, const GateDurations &durations) {
    if (points < 1) throw Error(ErrorCategory::Validation, "delay grid needs at least one point");
    if (!(span_ns >= 0.0)) throw Error(ErrorCategory::Validation, "delay span must be nonnegative");
    std::vector<double> out;
    if (points == 1) return {0.0};
    if (delay == DelayRealization::Continuous) {
        for (int i = 0; i < points; ++i) out.push_back(span_ns * i / (points - 1));
        return out;
    }
    const long long k_max = std::llround(span_ns / durations.identity_ns);
    long long last = -1;
    for (int i = 0; i < points; ++i) {
        const long long k = std::llround(static_cast<double>(k_max) * i / (points - 1));
        if (k == last) continue;
        out.push_back(static_cast<double>(k) * durations.identity_ns);
        last = k;
    }
    return out;
}

CouplingGraph resolve_graph(const RunConfig &config) {
    return config.graph_file.empty() ? ibmqx5() : load_graph_file(config.graph_file);
}

QubitChain resolve_chain(const RunConfig &config, const CouplingGraph &graph, int n) {
    if (auto it = config.chains.find(n); it != config.chains.end()) {
        if (static_cast<int>(it->second.size()) != n) {
            field_error("chains." + std::to_string(n), "chain length does not match N");
        }
        try {
            return make_chain(graph, it->second);
        } catch (const Error &e) {
            field_error("chains." + std::to_string(n), e.what());
        }
    }
    if (config.chain_policy == ChainPolicy::Reference && is_bundled_ibmqx5(graph)) {
        if (auto ref = reference_chain(n)) return make_chain(graph, *ref);
    }
    return find_chain(graph, n);
}

NoiseModel resolve_noise(const RunConfig &config) {
    NoiseModel m = config.noise;
    if (!config.calibration_file.empty()) {
        const CalibrationFile cal = load_calibration_file(config.calibration_file);
        for (const auto &[label, q] : cal.qubits) m.per_qubit.emplace(label, q);
        for (const auto &[edge, p] : cal.cnot_error) m.per_edge_p2.emplace(edge, p);
    }
    return m;
}

std::vector<double> resolve_delays(const RunConfig &config, int n) {
    if (auto it = config.delays_ns.find(n); it != config.delays_ns.end()) return it->second;
    if (auto it = config.delay_span_ns.find(n); it != config.delay_span_ns.end()) {
        return delay_grid(it->second, std::max(config.delay_points, 1), config.delay, config.durations);
    }
    if (auto it = config.delays_ns.find(0); it != config.delays_ns.end()) return it->second;
    if (auto it = config.delay_span_ns.find(0); it != config.delay_span_ns.end()) {
        return delay_grid(it->second, std::max(config.delay_points, 1), config.delay, config.durations);
    }
    return {0.0};
}

ExperimentPlan make_plan(const RunConfig &config, int n) {
    const CouplingGraph graph = resolve_graph(config);
    ExperimentPlan plan;
    plan.chain = resolve_chain(config, graph, n);
    plan.graph = graph;
    plan.delays_ns = resolve_delays(config, n);
    plan.phi_grid_size = config.phi_grid_size;
    plan.shots = config.shots;
    plan.mode = config.mode;
    plan.delay = config.delay;
    plan.noise = resolve_noise(config);
    plan.seed = config.seed;
    plan.durations = config.durations;
    plan.workers = config.workers;
    return plan;
}

void validate_run_config(const RunConfig &config) {
    const CouplingGraph graph = resolve_graph(config);
    if (config.n_min < 1) field_error("n_min", "must be at least 1");
    if (config.n_max < config.n_min) field_error("n_max", "must not be below n_min");
    if (static_cast<std::size_t>(config.n_max) > graph.node_count()) {
        field_error("n_max", "exceeds the graph's " + std::to_string(graph.node_count()) + " qubits");
    }
    if (config.shots < 1) field_error("shots", "must be at least 1");
    if (config.workers < 1) field_error("workers", "must be at least 1");
    if (config.phi_grid_size != 0 && config.phi_grid_size < 3) field_error("phi_grid_size", "must be 0 or at least 3");
    if (!config.delay_span_ns.empty() && config.delay_points < 1) {
        field_error("delay_points", "must be at least 1 when delay_span_ns is given");
    }
    for (int n = config.n_min; n <= config.n_max; ++n) {
        const ExperimentPlan plan = make_plan(config, n);
        std::string where = "delay_span_ns";
        if (config.delays_ns.contains(n)) {
            where = "delays_ns." + std::to_string(n);
        } else if (config.delays_ns.contains(0)) {
            where = "delays_ns";
        }
        for (std::size_t i = 0; i < plan.delays_ns.size(); ++i) {
            const double tau = plan.delays_ns[i];
            if (!(tau >= 0.0)) field_error(where + "[" + std::to_string(i) + "]", "delays must be nonnegative");
            if (config.delay == DelayRealization::IdentityGates) {
                try {
                    identity_count_for_delay(tau, config.durations);
                } catch (const Error &e) {
                    field_error(where + "[" + std::to_string(i) + "]", e.what());
                }
            }
        }
        try {
            plan.validate();
        } catch (const Error &e) {
            field_error("N=" + std::to_string(n), e.what());
        }
    }
}

}  // namespace ghzdeco
