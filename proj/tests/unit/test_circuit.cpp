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

#include <gtest/gtest.h>

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>

#include "ghzdeco/circuit.hpp"
#include "ghzdeco/error.hpp"

using namespace ghzdeco;
using namespace std::complex_literals;

namespace {

constexpr double kPi = std::numbers::pi;

// The target analysis rotation, written out independently of the library.
Eigen::Matrix2cd target_rotation(double phi) {
    const double c = std::cos(kPi / 4.0);
    const double s = std::sin(kPi / 4.0);
    Eigen::Matrix2cd m;
    m << c, 1i * s * std::exp(-1i * phi), 1i * s * std::exp(1i * phi), c;
    return m;
}

// OpenQASM 2.0 u3(theta, phi, lambda).
Eigen::Matrix2cd qasm_u3(double theta, double phi, double lambda) {
    Eigen::Matrix2cd m;
    m << std::cos(theta / 2), -std::exp(1i * lambda) * std::sin(theta / 2), std::exp(1i * phi) * std::sin(theta / 2),
        std::exp(1i * (phi + lambda)) * std::cos(theta / 2);
    return m;
}

Circuit random_circuit(std::mt19937_64 &rng) {
    const auto &g = ibmqx5();
    std::vector<CouplingGraph::Edge> edges(g.edges().begin(), g.edges().end());
    std::uniform_int_distribution<std::size_t> pick_edge(0, edges.size() - 1);
    std::uniform_int_distribution<int> pick_kind(0, 3);
    std::uniform_real_distribution<double> angle(-kPi + 1e-9, kPi);
    Circuit c;
    c.register_qubits = g.nodes();
    std::shuffle(c.register_qubits.begin(), c.register_qubits.end(), rng);
    std::uniform_int_distribution<std::size_t> pick_q(0, c.register_qubits.size() - 1);
    const int len = std::uniform_int_distribution<int>(0, 40)(rng);
    for (int i = 0; i < len; ++i) {
        const int q = c.register_qubits[pick_q(rng)];
        switch (pick_kind(rng)) {
            case 0:
                c.gates.push_back(make_h(q));
                break;
            case 1: {
                const auto [a, b] = edges[pick_edge(rng)];
                c.gates.push_back(make_cnot(a, b));
                break;
            }
            case 2:
                c.gates.push_back(make_id(q));
                break;
            default:
                c.gates.push_back(make_u3(q, {angle(rng), angle(rng), angle(rng)}));
        }
    }
    for (int q : c.register_qubits) c.gates.push_back(make_measure(q));
    return c;
}

}  // namespace

TEST(Circuit, GhzGateCountFollowsReversals) {
    for (int n = 1; n <= 9; ++n) {
        const QubitChain chain = make_chain(ibmqx5(), *reference_chain(n));
        const Circuit c = build_ghz(ibmqx5(), chain);
        EXPECT_EQ(c.gates.size(), static_cast<std::size_t>(1 + (n - 1) + 4 * chain.reversal_count)) << "N=" << n;
        EXPECT_NO_THROW(check_hardware_faithful(c, ibmqx5()));
        EXPECT_EQ(c.register_qubits, chain.qubits);
    }
    const Circuit five = build_ghz(ibmqx5(), make_chain(ibmqx5(), {1, 2, 3, 4, 5}));
    EXPECT_EQ(five.gates.size(), 9u);
}

TEST(Circuit, HardwareCheckRejectsWrongDirection) {
    Circuit c;
    c.register_qubits = {4, 5};
    c.gates = {make_h(4), make_cnot(4, 5)};
    EXPECT_THROW(check_hardware_faithful(c, ibmqx5()), Error);
}

TEST(Circuit, U3ReproducesTheAnalysisRotation) {
    std::mt19937_64 rng(2018);
    std::uniform_real_distribution<double> phi(-4.0 * kPi, 4.0 * kPi);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double p = phi(rng);
        const auto rot = analysis_rotation(p);
        const auto &a = rot.angles;
        worst = std::max(worst, (qasm_u3(a.theta, a.phi, a.lambda) - target_rotation(p)).cwiseAbs().maxCoeff());
        worst = std::max(worst, (u3_matrix(a) - target_rotation(p)).cwiseAbs().maxCoeff());
        worst = std::max(worst, (rot.matrix - target_rotation(p)).cwiseAbs().maxCoeff());
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Circuit, QasmRoundTripIsExact) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        const Circuit c = random_circuit(rng);
        const std::string text = emit_qasm(c);
        const Circuit back = parse_qasm(text);
        EXPECT_EQ(back, c) << text;
        EXPECT_EQ(emit_qasm(back), text);
        EXPECT_EQ(circuit_from_json(circuit_to_json(c)), c);
    }
}

TEST(Circuit, QasmRoundTripOfExperimentCircuits) {
    for (int n = 1; n <= 9; ++n) {
        Circuit c = build_ghz(ibmqx5(), find_chain(ibmqx5(), n));
        c = append_delay(c, 3);
        c = append_analysis_and_measure(c, 0.37 * n);
        EXPECT_EQ(parse_qasm(emit_qasm(c)), c);
    }
}

TEST(Circuit, QasmParseErrors) {
    auto category_of = [](std::string_view text) {
        try {
            parse_qasm(text);
        } catch (const Error &e) {
            return e.category();
        }
        return ErrorCategory::Io;
    };
    const std::string head = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncreg c[2];\n";
    EXPECT_EQ(category_of(head + "rz(0.1) q[0];\n"), ErrorCategory::Parse);
    EXPECT_EQ(category_of(head + "h q[0]\n"), ErrorCategory::Parse);
    EXPECT_EQ(category_of(head + "cx q[0],q[0];\n"), ErrorCategory::Validation);
    EXPECT_EQ(category_of(head + "measure q[0] -> c[0];\nmeasure q[0] -> c[1];\n"), ErrorCategory::Validation);
}

TEST(Circuit, DelaysAreIdentityMultiples) {
    EXPECT_EQ(identity_count_for_delay(0.0), 0);
    EXPECT_EQ(identity_count_for_delay(900.0), 10);
    EXPECT_DOUBLE_EQ(delay_ns(7), 630.0);
    try {
        identity_count_for_delay(100.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.category(), ErrorCategory::Validation);
    }
    Circuit c;
    c.register_qubits = {0, 1};
    c = append_delay(c, 4);
    EXPECT_EQ(c.gates.size(), 8u);
}

TEST(Circuit, WrapAngleStaysInHalfOpenInterval) {
    for (double x : {-7.0, -kPi, 0.0, kPi, 3.5, 100.0}) {
        const double w = wrap_angle(x);
        EXPECT_GT(w, -kPi);
        EXPECT_LE(w, kPi);
        EXPECT_NEAR(std::remainder(w - x, 2.0 * kPi), 0.0, 1e-12);
    }
}
