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

#include "ghzdeco/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "ghzdeco/error.hpp"
#include "json.hpp"

namespace ghzdeco {

using nlohmann::json;
using namespace std::complex_literals;

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "h";
        case GateKind::CNOT:
            return "cx";
        case GateKind::ID:
            return "id";
        case GateKind::U3:
            return "u3";
        case GateKind::MEASURE:
            return "measure";
    }
    return "?";
}

double wrap_angle(double radians) {
    constexpr double pi = std::numbers::pi;
    if (radians > -pi && radians <= pi) return radians;
    double r = std::remainder(radians, 2.0 * pi);
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

Gate make_h(int q, const GateDurations &d) { return Gate{GateKind::H, {q}, {}, d.single_qubit_ns}; }

Gate make_cnot(int control, int target, const GateDurations &d) {
    return Gate{GateKind::CNOT, {control, target}, {}, d.cnot_ns};
}

Gate make_id(int q, const GateDurations &d) { return Gate{GateKind::ID, {q}, {}, d.identity_ns}; }

Gate make_u3(int q, U3Angles angles, const GateDurations &d) {
    angles = {wrap_angle(angles.theta), wrap_angle(angles.phi), wrap_angle(angles.lambda)};
    return Gate{GateKind::U3, {q}, angles, d.single_qubit_ns};
}

Gate make_measure(int q, const GateDurations &d) { return Gate{GateKind::MEASURE, {q}, {}, d.measure_ns}; }

void validate_circuit(const Circuit &circuit) {
    std::set<int> reg;
    for (int q : circuit.register_qubits) {
        if (!reg.insert(q).second) {
            throw Error(ErrorCategory::Validation, "register lists qubit " + std::to_string(q) + " twice");
        }
    }
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate &g = circuit.gates[i];
        std::string where = "gate " + std::to_string(i) + " (" + std::string(gate_name(g.kind)) + ")";
        std::size_t arity = g.kind == GateKind::CNOT ? 2 : 1;
        if (g.operands.size() != arity) {
            throw Error(ErrorCategory::Validation, where + ": expected " + std::to_string(arity) + " operand(s)");
        }
        if (arity == 2 && g.operands[0] == g.operands[1]) {
            throw Error(ErrorCategory::Validation, where + ": control and target coincide");
        }
        for (int q : g.operands) {
            if (!reg.contains(q)) {
                throw Error(ErrorCategory::Validation,
                            where + ": qubit " + std::to_string(q) + " is not in the register");
            }
        }
    }
}

void check_hardware_faithful(const Circuit &circuit, const CouplingGraph &graph) {
    for (const Gate &g : circuit.gates) {
        if (g.kind != GateKind::CNOT) continue;
        if (!graph.has_edge(g.operands[0], g.operands[1])) {
            throw Error(ErrorCategory::Validation, "cx q[" + std::to_string(g.operands[0]) + "],q[" +
                                                       std::to_string(g.operands[1]) +
                                                       "] is not a native coupling direction");
        }
    }
}

Circuit build_ghz(const CouplingGraph &graph, const QubitChain &chain, const GateDurations &durations) {
    // Recomputes the reversal count, so a stale chain cannot slip through.
    QubitChain checked = make_chain(graph, chain.qubits);
    if (checked.qubits.empty()) throw Error(ErrorCategory::Validation, "empty chain");

    Circuit c;
    c.register_qubits = checked.qubits;
    c.durations = durations;
    c.gates.push_back(make_h(checked.qubits.front(), durations));
    for (std::size_t i = 1; i < checked.qubits.size(); ++i) {
        int a = checked.qubits[i - 1];
        int b = checked.qubits[i];
        if (graph.has_edge(a, b)) {
            c.gates.push_back(make_cnot(a, b, durations));
        } else {
            c.gates.push_back(make_h(a, durations));
            c.gates.push_back(make_h(b, durations));
            c.gates.push_back(make_cnot(b, a, durations));
            c.gates.push_back(make_h(a, durations));
            c.gates.push_back(make_h(b, durations));
        }
    }
    return c;
}

Circuit append_delay(Circuit circuit, int k) {
    if (k < 0) throw Error(ErrorCategory::Validation, "negative identity count");
    for (int layer = 0; layer < k; ++layer) {
        for (int q : circuit.register_qubits) circuit.gates.push_back(make_id(q, circuit.durations));
    }
    return circuit;
}

double delay_ns(int k, const GateDurations &durations) { return k * durations.identity_ns; }

int identity_count_for_delay(double tau_ns, const GateDurations &durations) {
    if (!(tau_ns >= 0.0) || !std::isfinite(tau_ns)) {
        throw Error(ErrorCategory::Validation, "delay must be a nonnegative finite number of ns");
    }
    double steps = tau_ns / durations.identity_ns;
    double rounded = std::round(steps);
    if (std::abs(steps - rounded) > 1e-9 * std::max(1.0, steps)) {
        std::ostringstream msg;
        msg << "delay " << tau_ns << " ns is not a multiple of the " << durations.identity_ns
            << " ns identity gate";
        throw Error(ErrorCategory::Validation, msg.str());
    }
    return static_cast<int>(rounded);
}

Eigen::Matrix2cd u3_matrix(const U3Angles &a) {
    const double c = std::cos(a.theta / 2.0);
    const double s = std::sin(a.theta / 2.0);
    Eigen::Matrix2cd m;
    m << c, -std::exp(1i * a.lambda) * s,
         std::exp(1i * a.phi) * s, std::exp(1i * (a.lambda + a.phi)) * c;
    return m;
}

Eigen::Matrix2cd hadamard_matrix() {
    Eigen::Matrix2cd m;
    m << 1.0, 1.0, 1.0, -1.0;
    return m / std::numbers::sqrt2;
}

AnalysisRotation analysis_rotation(double phi) {
    constexpr double pi = std::numbers::pi;
    const double c = std::cos(pi / 4.0);
    const double s = std::sin(pi / 4.0);
    Eigen::Matrix2cd m;
    m << c, 1i * s * std::exp(-1i * phi),
         1i * s * std::exp(1i * phi), c;
    U3Angles angles{pi / 2.0, wrap_angle(phi + pi / 2.0), wrap_angle(-phi - pi / 2.0)};
    return {m, angles};
}

Circuit append_analysis_and_measure(Circuit circuit, double phi) {
    const U3Angles angles = analysis_rotation(phi).angles;
    for (int q : circuit.register_qubits) circuit.gates.push_back(make_u3(q, angles, circuit.durations));
    for (int q : circuit.register_qubits) circuit.gates.push_back(make_measure(q, circuit.durations));
    return circuit;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

[[noreturn]] void qasm_error(int line, const std::string &what) {
    throw Error(ErrorCategory::Parse, "qasm line " + std::to_string(line) + ": " + what);
}

int parse_int(std::string_view s, int line) {
    std::string t = trim(s);
    int v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc{} || p != t.data() + t.size()) qasm_error(line, "bad integer '" + t + "'");
    return v;
}

double parse_real(std::string_view s, int line) {
    std::string t = trim(s);
    char *end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) qasm_error(line, "bad number '" + t + "'");
    return v;
}

/// Parses `name[index]`.
int parse_indexed(std::string_view s, std::string_view name, int line) {
    std::string t = trim(s);
    if (t.size() < name.size() + 3 || t.compare(0, name.size(), name) != 0 || t[name.size()] != '[' ||
        t.back() != ']') {
        qasm_error(line, "expected " + std::string(name) + "[i], got '" + t + "'");
    }
    return parse_int(std::string_view(t).substr(name.size() + 1, t.size() - name.size() - 2), line);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace

std::string emit_qasm(const Circuit &circuit) {
    validate_circuit(circuit);
    int qreg_size = 0;
    for (int q : circuit.register_qubits) qreg_size = std::max(qreg_size, q + 1);

    std::map<int, std::size_t> position;
    for (std::size_t i = 0; i < circuit.register_qubits.size(); ++i) position[circuit.register_qubits[i]] = i;

    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "// register:";
    for (std::size_t i = 0; i < circuit.register_qubits.size(); ++i) {
        out << (i == 0 ? " " : ",") << circuit.register_qubits[i];
    }
    out << "\n";
    out << "qreg q[" << qreg_size << "];\n";
    out << "creg c[" << circuit.register_qubits.size() << "];\n";
    for (const Gate &g : circuit.gates) {
        switch (g.kind) {
            case GateKind::H:
            case GateKind::ID:
                out << gate_name(g.kind) << " q[" << g.operands[0] << "];\n";
                break;
            case GateKind::CNOT:
                out << "cx q[" << g.operands[0] << "],q[" << g.operands[1] << "];\n";
                break;
            case GateKind::U3:
                out << "u3(" << format_double(wrap_angle(g.angles.theta)) << ","
                    << format_double(wrap_angle(g.angles.phi)) << "," << format_double(wrap_angle(g.angles.lambda))
                    << ") q[" << g.operands[0] << "];\n";
                break;
            case GateKind::MEASURE:
                out << "measure q[" << g.operands[0] << "] -> c[" << position.at(g.operands[0]) << "];\n";
                break;
        }
    }
    return out.str();
}

Circuit parse_qasm(std::string_view text, const GateDurations &durations) {
    Circuit c;
    c.durations = durations;
    bool have_register = false;
    std::map<int, int> measured_position;
    std::set<int> used;

    int line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line.rfind("//", 0) == 0) {
            std::string body = trim(std::string_view(line).substr(2));
            if (body.rfind("register:", 0) == 0) {
                std::string list = trim(std::string_view(body).substr(9));
                if (!list.empty()) {
                    for (const auto &item : split(list, ',')) c.register_qubits.push_back(parse_int(item, line_no));
                }
                have_register = true;
            }
            continue;
        }
        if (const auto cut = line.find("//"); cut != std::string::npos) line = trim(std::string_view(line).substr(0, cut));
        if (line.back() != ';') qasm_error(line_no, "statement not terminated by ';'");
        for (const std::string &stmt_raw : split(line, ';')) {
            std::string stmt = trim(stmt_raw);
            if (stmt.empty()) continue;
            if (stmt.rfind("OPENQASM", 0) == 0 || stmt.rfind("include", 0) == 0 || stmt.rfind("qreg", 0) == 0 ||
                stmt.rfind("creg", 0) == 0 || stmt.rfind("barrier", 0) == 0) {
                continue;
            }
            if (stmt.rfind("measure", 0) == 0) {
                auto arrow = stmt.find("->");
                if (arrow == std::string::npos) qasm_error(line_no, "measure without '->'");
                int q = parse_indexed(std::string_view(stmt).substr(7, arrow - 7), "q", line_no);
                int bit = parse_indexed(std::string_view(stmt).substr(arrow + 2), "c", line_no);
                if (!measured_position.emplace(bit, q).second) {
                    throw Error(ErrorCategory::Validation, "qasm line " + std::to_string(line_no) + ": c[" +
                                                               std::to_string(bit) + "] written twice");
                }
                for (const Gate &g : c.gates) {
                    if (g.kind == GateKind::MEASURE && g.operands[0] == q) {
                        throw Error(ErrorCategory::Validation,
                                    "qasm line " + std::to_string(line_no) + ": q[" + std::to_string(q) + "] measured twice");
                    }
                }
                used.insert(q);
                c.gates.push_back(make_measure(q, durations));
                continue;
            }
            if (stmt.rfind("u3(", 0) == 0) {
                auto close = stmt.find(')');
                if (close == std::string::npos) qasm_error(line_no, "unterminated u3 parameter list");
                auto params = split(std::string_view(stmt).substr(3, close - 3), ',');
                if (params.size() != 3) qasm_error(line_no, "u3 takes three parameters");
                U3Angles a{parse_real(params[0], line_no), parse_real(params[1], line_no),
                           parse_real(params[2], line_no)};
                int q = parse_indexed(std::string_view(stmt).substr(close + 1), "q", line_no);
                used.insert(q);
                c.gates.push_back(make_u3(q, a, durations));
                continue;
            }
            auto space = stmt.find_first_of(" \t");
            if (space == std::string::npos) qasm_error(line_no, "cannot parse '" + stmt + "'");
            std::string name = stmt.substr(0, space);
            auto args = split(std::string_view(stmt).substr(space + 1), ',');
            if (name == "h" || name == "id") {
                if (args.size() != 1) qasm_error(line_no, name + " takes one qubit");
                int q = parse_indexed(args[0], "q", line_no);
                used.insert(q);
                c.gates.push_back(name == "h" ? make_h(q, durations) : make_id(q, durations));
            } else if (name == "cx") {
                if (args.size() != 2) qasm_error(line_no, "cx takes two qubits");
                int a = parse_indexed(args[0], "q", line_no);
                int b = parse_indexed(args[1], "q", line_no);
                used.insert(a);
                used.insert(b);
                c.gates.push_back(make_cnot(a, b, durations));
            } else {
                qasm_error(line_no, "unsupported gate '" + name + "'");
            }
        }
    }
    if (!have_register) {
        if (!measured_position.empty() && measured_position.size() == used.size()) {
            for (const auto &[bit, q] : measured_position) c.register_qubits.push_back(q);
        } else {
            c.register_qubits.assign(used.begin(), used.end());
        }
    }
    validate_circuit(c);
    return c;
}

std::string circuit_to_json(const Circuit &circuit) {
    json doc;
    doc["register"] = circuit.register_qubits;
    doc["durations_ns"] = {{"single_qubit", circuit.durations.single_qubit_ns},
                           {"cnot", circuit.durations.cnot_ns},
                           {"identity", circuit.durations.identity_ns},
                           {"measure", circuit.durations.measure_ns}};
    json gates = json::array();
    for (const Gate &g : circuit.gates) {
        json jg;
        jg["kind"] = gate_name(g.kind);
        jg["operands"] = g.operands;
        if (g.kind == GateKind::U3) jg["params"] = {g.angles.theta, g.angles.phi, g.angles.lambda};
        jg["duration_ns"] = g.duration_ns;
        gates.push_back(std::move(jg));
    }
    doc["gates"] = std::move(gates);
    return doc.dump(2);
}

Circuit circuit_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCategory::Parse, "circuit: byte " + std::to_string(e.byte) + ": " + e.what());
    }
    try {
        Circuit c;
        c.register_qubits = doc.at("register").get<std::vector<int>>();
        if (doc.contains("durations_ns")) {
            const auto &d = doc["durations_ns"];
            c.durations.single_qubit_ns = d.value("single_qubit", c.durations.single_qubit_ns);
            c.durations.cnot_ns = d.value("cnot", c.durations.cnot_ns);
            c.durations.identity_ns = d.value("identity", c.durations.identity_ns);
            c.durations.measure_ns = d.value("measure", c.durations.measure_ns);
        }
        static const std::map<std::string, GateKind> kinds = {{"h", GateKind::H},
                                                              {"cx", GateKind::CNOT},
                                                              {"id", GateKind::ID},
                                                              {"u3", GateKind::U3},
                                                              {"measure", GateKind::MEASURE}};
        const auto &gates = doc.at("gates");
        for (std::size_t i = 0; i < gates.size(); ++i) {
            const auto &jg = gates[i];
            auto kind_name = jg.at("kind").get<std::string>();
            auto it = kinds.find(kind_name);
            if (it == kinds.end()) {
                throw Error(ErrorCategory::Parse, "gates[" + std::to_string(i) + "]: unknown kind '" + kind_name + "'");
            }
            Gate g;
            g.kind = it->second;
            g.operands = jg.at("operands").get<std::vector<int>>();
            if (g.kind == GateKind::U3) {
                auto p = jg.at("params").get<std::vector<double>>();
                if (p.size() != 3) throw Error(ErrorCategory::Parse, "gates[" + std::to_string(i) + "]: u3 needs 3 params");
                g.angles = {p[0], p[1], p[2]};
            }
            g.duration_ns = jg.at("duration_ns").get<double>();
            c.gates.push_back(std::move(g));
        }
        validate_circuit(c);
        return c;
    } catch (const json::exception &e) {
        throw Error(ErrorCategory::Parse, std::string("circuit: ") + e.what());
    }
}

}  // namespace ghzdeco
