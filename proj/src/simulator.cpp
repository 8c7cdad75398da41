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

#include "ghzdeco/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ghzdeco/error.hpp"

namespace ghzdeco {

namespace {

constexpr int kMaxQubits = 12;

using Index = Eigen::Index;

double us(double ns) { return ns * 1e-3; }

}  // namespace

const QubitNoise &NoiseModel::qubit(int label) const {
    auto it = per_qubit.find(label);
    return it == per_qubit.end() ? default_qubit : it->second;
}

double NoiseModel::cnot_error(int control, int target) const {
    auto it = per_edge_p2.find({control, target});
    return it == per_edge_p2.end() ? p2 : it->second;
}

NoiseModel NoiseModel::uniform(double t1_us, double t2_us) {
    NoiseModel m;
    m.default_qubit.t1_us = t1_us;
    m.default_qubit.t2_us = t2_us;
    return m;
}

namespace {

void validate_qubit(const QubitNoise &q, const std::string &where) {
    if (!(q.t1_us > 0.0) || !(q.t2_us > 0.0)) {
        throw Error(ErrorCategory::Validation, where + ": t1_us and t2_us must be positive");
    }
    if (q.t2_us > 2.0 * q.t1_us) {
        std::ostringstream msg;
        msg << where << ": t2_us = " << q.t2_us << " exceeds 2 * t1_us = " << 2.0 * q.t1_us;
        throw Error(ErrorCategory::Validation, msg.str());
    }
    if (!(q.readout_error >= 0.0 && q.readout_error <= 1.0)) {
        throw Error(ErrorCategory::Validation, where + ": readout_error must lie in [0, 1]");
    }
}

}  // namespace

void NoiseModel::validate() const {
    validate_qubit(default_qubit, "noise.default");
    for (const auto &[label, q] : per_qubit) validate_qubit(q, "noise.qubits[" + std::to_string(label) + "]");
    if (collective_t2c_us && !(*collective_t2c_us > 0.0)) {
        throw Error(ErrorCategory::Validation, "noise.collective_t2c_us must be positive");
    }
    if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0)) {
        throw Error(ErrorCategory::Validation, "noise: depolarizing probabilities must lie in [0, 1]");
    }
    for (const auto &[edge, p] : per_edge_p2) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(ErrorCategory::Validation, "noise: cnot error for [" + std::to_string(edge.first) + "," +
                                                       std::to_string(edge.second) + "] must lie in [0, 1]");
        }
    }
}

DensityMatrix::DensityMatrix(std::vector<int> register_qubits) : labels_(std::move(register_qubits)) {
    if (labels_.size() > kMaxQubits) {
        throw Error(ErrorCategory::Validation, "register of " + std::to_string(labels_.size()) +
                                                   " qubits exceeds the simulator limit of " +
                                                   std::to_string(kMaxQubits));
    }
    const Index d = Index{1} << labels_.size();
    entries_ = Eigen::MatrixXcd::Zero(d, d);
    entries_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(std::vector<int> register_qubits, Eigen::MatrixXcd entries)
    : DensityMatrix(std::move(register_qubits)) {
    if (entries.rows() != entries_.rows() || entries.cols() != entries_.cols()) {
        throw Error(ErrorCategory::Validation, "density matrix shape does not match the register size");
    }
    entries_ = std::move(entries);
}

DensityMatrix DensityMatrix::from_pure(std::vector<int> register_qubits, const Eigen::VectorXcd &psi) {
    DensityMatrix rho(std::move(register_qubits));
    if (psi.size() != rho.entries_.rows()) {
        throw Error(ErrorCategory::Validation, "state vector length does not match the register size");
    }
    rho.entries_ = psi * psi.adjoint();
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(std::vector<int> register_qubits) {
    DensityMatrix rho(std::move(register_qubits));
    const Index d = rho.entries_.rows();
    rho.entries_ = Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d);
    return rho;
}

int DensityMatrix::position_of(int label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw Error(ErrorCategory::Validation, "qubit " + std::to_string(label) + " is not in the simulated register");
    }
    return static_cast<int>(it - labels_.begin());
}

PhysicalityReport physicality(const DensityMatrix &rho) {
    const auto &m = rho.matrix();
    PhysicalityReport r;
    r.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
    r.trace_error = std::abs(m.trace() - std::complex<double>(1.0, 0.0));
    Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    r.min_eigenvalue = solver.eigenvalues().minCoeff();
    return r;
}

void require_physical(const DensityMatrix &rho) {
    auto r = physicality(rho);
    if (r.hermiticity_error > 1e-10 || r.trace_error > 1e-10 || r.min_eigenvalue < -1e-9) {
        std::ostringstream msg;
        msg << "unphysical density matrix: hermiticity error " << r.hermiticity_error << ", trace error "
            << r.trace_error << ", min eigenvalue " << r.min_eigenvalue;
        throw Error(ErrorCategory::Numerical, msg.str());
    }
}

void apply_unitary(DensityMatrix &rho, int position, const Eigen::Matrix2cd &u) {
    auto &m = rho.matrix();
    const Index d = m.rows();
    const Index mask = Index{1} << position;
    // rows: rho <- U rho
    for (Index j = 0; j < d; ++j) {
        for (Index i0 = 0; i0 < d; ++i0) {
            if (i0 & mask) continue;
            const Index i1 = i0 | mask;
            const auto a = m(i0, j);
            const auto b = m(i1, j);
            m(i0, j) = u(0, 0) * a + u(0, 1) * b;
            m(i1, j) = u(1, 0) * a + u(1, 1) * b;
        }
    }
    // columns: rho <- rho U^dagger
    const Eigen::Matrix2cd ud = u.adjoint();
    for (Index j0 = 0; j0 < d; ++j0) {
        if (j0 & mask) continue;
        const Index j1 = j0 | mask;
        for (Index i = 0; i < d; ++i) {
            const auto a = m(i, j0);
            const auto b = m(i, j1);
            m(i, j0) = a * ud(0, 0) + b * ud(1, 0);
            m(i, j1) = a * ud(0, 1) + b * ud(1, 1);
        }
    }
}

void apply_cnot(DensityMatrix &rho, int control_position, int target_position) {
    auto &m = rho.matrix();
    const Index d = m.rows();
    const Index cmask = Index{1} << control_position;
    const Index tmask = Index{1} << target_position;
    // P is an involution swapping x and x ^ tmask whenever the control bit is set.
    for (Index x = 0; x < d; ++x) {
        if ((x & cmask) && !(x & tmask)) m.row(x).swap(m.row(x | tmask));
    }
    for (Index x = 0; x < d; ++x) {
        if ((x & cmask) && !(x & tmask)) m.col(x).swap(m.col(x | tmask));
    }
}

void depolarize(DensityMatrix &rho, int position, double p) {
    if (p == 0.0) return;
    auto &m = rho.matrix();
    const Index d = m.rows();
    const Index mask = Index{1} << position;
    for (Index j0 = 0; j0 < d; ++j0) {
        if (j0 & mask) continue;
        const Index j1 = j0 | mask;
        for (Index i0 = 0; i0 < d; ++i0) {
            if (i0 & mask) continue;
            const Index i1 = i0 | mask;
            const auto a = m(i0, j0);
            const auto b = m(i1, j1);
            m(i0, j0) = (1.0 - 0.5 * p) * a + 0.5 * p * b;
            m(i1, j1) = (1.0 - 0.5 * p) * b + 0.5 * p * a;
            m(i0, j1) *= 1.0 - p;
            m(i1, j0) *= 1.0 - p;
        }
    }
}

void depolarize_pair(DensityMatrix &rho, int position_a, int position_b, double p) {
    if (p == 0.0) return;
    auto &m = rho.matrix();
    const Index d = m.rows();
    const Index ma = Index{1} << position_a;
    const Index mb = Index{1} << position_b;
    const Index sub[4] = {0, ma, mb, ma | mb};
    for (Index j0 = 0; j0 < d; ++j0) {
        if (j0 & (ma | mb)) continue;
        for (Index i0 = 0; i0 < d; ++i0) {
            if (i0 & (ma | mb)) continue;
            std::complex<double> trace = 0.0;
            for (Index s = 0; s < 4; ++s) trace += m(i0 | sub[s], j0 | sub[s]);
            for (Index s = 0; s < 4; ++s) {
                for (Index t = 0; t < 4; ++t) {
                    auto &e = m(i0 | sub[s], j0 | sub[t]);
                    e *= 1.0 - p;
                    if (s == t) e += 0.25 * p * trace;
                }
            }
        }
    }
}

void amplitude_damp(DensityMatrix &rho, int position, double gamma) {
    if (gamma == 0.0) return;
    auto &m = rho.matrix();
    const Index d = m.rows();
    const Index mask = Index{1} << position;
    const double keep = std::sqrt(1.0 - gamma);
    for (Index j0 = 0; j0 < d; ++j0) {
        if (j0 & mask) continue;
        const Index j1 = j0 | mask;
        for (Index i0 = 0; i0 < d; ++i0) {
            if (i0 & mask) continue;
            const Index i1 = i0 | mask;
            m(i0, j0) += gamma * m(i1, j1);
            m(i1, j1) *= 1.0 - gamma;
            m(i0, j1) *= keep;
            m(i1, j0) *= keep;
        }
    }
}

void phase_damp(DensityMatrix &rho, int position, double factor) {
    if (factor == 1.0) return;
    auto &m = rho.matrix();
    const Index d = m.rows();
    const Index mask = Index{1} << position;
    for (Index j = 0; j < d; ++j) {
        for (Index i = 0; i < d; ++i) {
            if ((i ^ j) & mask) m(i, j) *= factor;
        }
    }
}

void apply_idle_noise(DensityMatrix &rho, int qubit_label, double duration_ns, const NoiseModel &noise) {
    if (duration_ns < 0.0) throw Error(ErrorCategory::Validation, "idle duration must be nonnegative");
    if (duration_ns == 0.0) return;
    const int pos = rho.position_of(qubit_label);
    const QubitNoise &q = noise.qubit(qubit_label);
    const double t = us(duration_ns);

    // Both channels are diagonal in the computational basis, so they commute.
    if (std::isfinite(q.t1_us)) amplitude_damp(rho, pos, -std::expm1(-t / q.t1_us));

    double dephasing_rate = 1.0 / q.t2_us - 0.5 / q.t1_us;
    if (dephasing_rate < 0.0) dephasing_rate = 0.0;  // t2 == 2 t1 up to rounding
    if (dephasing_rate > 0.0) phase_damp(rho, pos, std::exp(-t * dephasing_rate));
}

void apply_collective_dephasing(DensityMatrix &rho, double duration_ns, double t2c_us) {
    if (duration_ns < 0.0) throw Error(ErrorCategory::Validation, "dephasing duration must be nonnegative");
    if (!(t2c_us > 0.0)) throw Error(ErrorCategory::Validation, "collective T2c must be positive");
    if (duration_ns == 0.0) return;
    const double rate = us(duration_ns) / t2c_us;
    const int n = rho.n_qubits();
    // m_x - m_y = popcount(y) - popcount(x); tabulate by |difference|.
    std::vector<double> factor(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) factor[static_cast<std::size_t>(k)] = std::exp(-static_cast<double>(k * k) * rate);
    auto &m = rho.matrix();
    const Index d = m.rows();
    std::vector<int> weight(static_cast<std::size_t>(d));
    for (Index x = 0; x < d; ++x) weight[static_cast<std::size_t>(x)] = std::popcount(static_cast<std::uint64_t>(x));
    for (Index j = 0; j < d; ++j) {
        for (Index i = 0; i < d; ++i) {
            const int diff = std::abs(weight[static_cast<std::size_t>(i)] - weight[static_cast<std::size_t>(j)]);
            if (diff != 0) m(i, j) *= factor[static_cast<std::size_t>(diff)];
        }
    }
}

void apply_delay(DensityMatrix &rho, double tau_ns, const NoiseModel &noise) {
    for (int label : rho.register_qubits()) apply_idle_noise(rho, label, tau_ns, noise);
    if (noise.collective_t2c_us) apply_collective_dephasing(rho, tau_ns, *noise.collective_t2c_us);
}

void apply_gate(DensityMatrix &rho, const Gate &gate, const NoiseModel &noise) {
    std::vector<int> positions;
    positions.reserve(gate.operands.size());
    for (int label : gate.operands) positions.push_back(rho.position_of(label));

    switch (gate.kind) {
        case GateKind::H:
            apply_unitary(rho, positions[0], hadamard_matrix());
            depolarize(rho, positions[0], noise.p1);
            break;
        case GateKind::U3:
            apply_unitary(rho, positions[0], u3_matrix(gate.angles));
            depolarize(rho, positions[0], noise.p1);
            break;
        case GateKind::CNOT:
            if (positions.size() != 2 || positions[0] == positions[1]) {
                throw Error(ErrorCategory::Validation, "cx needs two distinct operands");
            }
            apply_cnot(rho, positions[0], positions[1]);
            depolarize_pair(rho, positions[0], positions[1], noise.cnot_error(gate.operands[0], gate.operands[1]));
            break;
        case GateKind::ID:
            apply_idle_noise(rho, gate.operands[0], gate.duration_ns, noise);
            return;
        case GateKind::MEASURE:
            return;
    }
    if (noise.gate_time_noise && gate.duration_ns > 0.0) {
        for (int label : rho.register_qubits()) {
            if (std::find(gate.operands.begin(), gate.operands.end(), label) != gate.operands.end()) continue;
            apply_idle_noise(rho, label, gate.duration_ns, noise);
        }
    }
}

void run_gates(DensityMatrix &rho, std::span<const Gate> gates, const NoiseModel &noise) {
    std::map<int, double> block_idle;  // per-qubit idle time in the current delay block
    auto flush_block = [&] {
        if (block_idle.empty()) return;
        double longest = 0.0;
        for (const auto &[label, t] : block_idle) longest = std::max(longest, t);
        if (noise.collective_t2c_us) apply_collective_dephasing(rho, longest, *noise.collective_t2c_us);
        block_idle.clear();
    };
    for (const Gate &g : gates) {
        if (g.kind == GateKind::ID) {
            apply_gate(rho, g, noise);
            block_idle[g.operands.at(0)] += g.duration_ns;
            continue;
        }
        flush_block();
        apply_gate(rho, g, noise);
        if (noise.gate_time_noise && noise.collective_t2c_us && g.kind != GateKind::MEASURE && g.duration_ns > 0.0) {
            apply_collective_dephasing(rho, g.duration_ns, *noise.collective_t2c_us);
        }
    }
    flush_block();
}

DensityMatrix evolve(const Circuit &circuit, const NoiseModel &noise) {
    validate_circuit(circuit);
    noise.validate();
    DensityMatrix rho(circuit.register_qubits);
    run_gates(rho, circuit.gates, noise);
    return rho;
}

double coherence_of(const DensityMatrix &rho) {
    const std::size_t all_ones = rho.dim() - 1;
    if (all_ones == 0) return 0.0;
    return std::abs(rho(all_ones, 0)) + std::abs(rho(0, all_ones));
}

double parity_expectation(const DensityMatrix &rho, const NoiseModel &noise) {
    const auto &m = rho.matrix();
    double sum = 0.0;
    for (Index x = 0; x < m.rows(); ++x) {
        const double p = m(x, x).real();
        sum += (std::popcount(static_cast<std::uint64_t>(x)) % 2 == 0) ? p : -p;
    }
    for (int label : rho.register_qubits()) sum *= 1.0 - 2.0 * noise.qubit(label).readout_error;
    return sum;
}

Counts sample_counts(const DensityMatrix &rho, long long shots, const NoiseModel &noise, std::uint64_t seed) {
    if (shots < 1) throw Error(ErrorCategory::Validation, "shot count must be at least 1");
    const auto &m = rho.matrix();
    const Index d = m.rows();
    std::vector<double> cumulative(static_cast<std::size_t>(d));
    double total = 0.0;
    for (Index x = 0; x < d; ++x) {
        double p = m(x, x).real();
        if (p < -1e-9) {
            std::ostringstream msg;
            msg << "negative probability " << p << " for basis state " << x;
            throw Error(ErrorCategory::Numerical, msg.str());
        }
        total += std::max(p, 0.0);
        cumulative[static_cast<std::size_t>(x)] = total;
    }
    if (!(total > 0.0)) throw Error(ErrorCategory::Numerical, "density matrix has zero trace");

    const int n = rho.n_qubits();
    std::vector<double> flip(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) flip[static_cast<std::size_t>(i)] = noise.qubit(rho.register_qubits()[static_cast<std::size_t>(i)]).readout_error;

    std::mt19937_64 gen(seed);
    std::map<std::uint64_t, long long> tally;
    for (long long s = 0; s < shots; ++s) {
        const double u = unit_interval(gen()) * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        auto outcome = static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cumulative.begin(), d - 1));
        for (int i = 0; i < n; ++i) {
            const double e = flip[static_cast<std::size_t>(i)];
            if (e > 0.0 && unit_interval(gen()) < e) outcome ^= std::uint64_t{1} << i;
        }
        ++tally[outcome];
    }

    Counts c;
    c.shots = shots;
    for (const auto &[outcome, k] : tally) {
        std::string bits(static_cast<std::size_t>(n), '0');
        for (int i = 0; i < n; ++i) {
            if ((outcome >> i) & 1U) bits[static_cast<std::size_t>(i)] = '1';
        }
        c.counts[bits] = k;
    }
    return c;
}

}  // namespace ghzdeco
