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

#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ghzdeco/topology.hpp"

namespace ghzdeco {

enum class GateKind { H, CNOT, ID, U3, MEASURE };

std::string_view gate_name(GateKind kind);

/// U3 angles in the OpenQASM argument order u3(theta, phi, lambda):
///
///   [[cos(theta/2),               -e^{i lambda} sin(theta/2)],
///    [e^{i phi} sin(theta/2),  e^{i(lambda + phi)} cos(theta/2)]]
struct U3Angles {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
    bool operator==(const U3Angles &) const = default;
};

/// Gate durations in nanoseconds. An identity gate is an 80 ns pulse slot
/// plus a 10 ns buffer; the others only matter when gate-time noise is on.
struct GateDurations {
    double single_qubit_ns = 90.0;
    double cnot_ns = 250.0;
    double identity_ns = 90.0;
    double measure_ns = 0.0;

    bool operator==(const GateDurations &) const = default;
};

struct Gate {
    GateKind kind = GateKind::ID;
    /// Physical qubit labels; CNOT is (control, target).
    std::vector<int> operands;
    U3Angles angles;  // meaningful for U3 only
    double duration_ns = 0.0;

    bool operator==(const Gate &) const = default;
};

Gate make_h(int q, const GateDurations &d = {});
Gate make_cnot(int control, int target, const GateDurations &d = {});
Gate make_id(int q, const GateDurations &d = {});
Gate make_u3(int q, U3Angles angles, const GateDurations &d = {});
Gate make_measure(int q, const GateDurations &d = {});

/// Ordered gate list over a register of physical qubit labels. The register
/// order fixes the qubit order of simulated states and measured bitstrings.
struct Circuit {
    std::vector<int> register_qubits;
    std::vector<Gate> gates;
    GateDurations durations;

    bool operator==(const Circuit &) const = default;
};

/// Throws Error{Validation} on arity mismatches, repeated CNOT operands or
/// operands outside the register.
void validate_circuit(const Circuit &circuit);

/// Throws Error{Validation} when any CNOT runs against the graph's direction.
void check_hardware_faithful(const Circuit &circuit, const CouplingGraph &graph);

/// GHZ preparation along `chain`: H on the head, then one CNOT per link.
/// A link that only exists in the reverse direction is realized as
/// H(a) H(b) CNOT(b, a) H(a) H(b).
Circuit build_ghz(const CouplingGraph &graph, const QubitChain &chain, const GateDurations &durations = {});

/// Appends `k` identity gates to every register qubit, layer by layer.
Circuit append_delay(Circuit circuit, int k);

/// Total delay contributed by `k` identity gates.
double delay_ns(int k, const GateDurations &durations = {});

/// Number of identity gates per qubit realizing `tau_ns`; throws
/// Error{Validation} unless tau is a nonnegative multiple of the ID duration.
int identity_count_for_delay(double tau_ns, const GateDurations &durations = {});

struct AnalysisRotation {
    Eigen::Matrix2cd matrix;
    U3Angles angles;
};

/// U(phi) = cos(pi/4) I + i sin(pi/4) [[0, e^{-i phi}], [e^{i phi}, 0]] and the
/// U3 angles realizing it: theta = pi/2, phi_u3 = phi + pi/2, lambda = -phi - pi/2
/// (both wrapped to (-pi, pi]).
AnalysisRotation analysis_rotation(double phi);

Eigen::Matrix2cd u3_matrix(const U3Angles &angles);
Eigen::Matrix2cd hadamard_matrix();

/// Appends one U3 analysis rotation and then one measurement to every register qubit.
Circuit append_analysis_and_measure(Circuit circuit, double phi);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double radians);

/// OpenQASM 2.0 with h, cx, id, u3 and measure. The register order is kept in
/// a leading `// register:` comment so parse_qasm can restore it.
std::string emit_qasm(const Circuit &circuit);
Circuit parse_qasm(std::string_view text, const GateDurations &durations = {});

/// Structured (JSON) form mirroring the Gate fields.
std::string circuit_to_json(const Circuit &circuit);
Circuit circuit_from_json(std::string_view text);

}  // namespace ghzdeco
