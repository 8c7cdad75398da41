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
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ghzdeco/circuit.hpp"

namespace ghzdeco {

/// Relaxation parameters of one physical qubit. Times in microseconds;
/// infinity disables the corresponding process.
struct QubitNoise {
    double t1_us = std::numeric_limits<double>::infinity();
    double t2_us = std::numeric_limits<double>::infinity();
    double readout_error = 0.0;

    bool operator==(const QubitNoise &) const = default;
};

struct NoiseModel {
    /// Parameters for any qubit without an entry in `per_qubit`.
    QubitNoise default_qubit;
    std::map<int, QubitNoise> per_qubit;
    /// Time constant of the register-wide correlated dephasing field.
    std::optional<double> collective_t2c_us;
    /// Depolarizing probability after each H / U3, and after each CNOT.
    double p1 = 0.0;
    double p2 = 0.0;
    /// CNOT depolarizing probability per directed coupling, overriding p2.
    std::map<std::pair<int, int>, double> per_edge_p2;
    /// Apply idle relaxation to spectator qubits for each gate's duration.
    bool gate_time_noise = false;

    const QubitNoise &qubit(int label) const;
    double cnot_error(int control, int target) const;

    /// Throws Error{Validation}: times must be > 0, t2 <= 2 t1, probabilities in [0, 1].
    void validate() const;

    static NoiseModel noiseless() { return {}; }
    /// Same t1 / t2 for every qubit.
    static NoiseModel uniform(double t1_us, double t2_us);
};

/// 2^n x 2^n density matrix over a register of physical qubit labels.
/// Basis index bit p corresponds to register position p.
class DensityMatrix {
  public:
    /// |0...0><0...0| over the register.
    explicit DensityMatrix(std::vector<int> register_qubits);
    DensityMatrix(std::vector<int> register_qubits, Eigen::MatrixXcd entries);

    static DensityMatrix from_pure(std::vector<int> register_qubits, const Eigen::VectorXcd &psi);
    static DensityMatrix maximally_mixed(std::vector<int> register_qubits);

    int n_qubits() const { return static_cast<int>(labels_.size()); }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const std::vector<int> &register_qubits() const { return labels_; }

    const Eigen::MatrixXcd &matrix() const { return entries_; }
    Eigen::MatrixXcd &matrix() { return entries_; }
    std::complex<double> operator()(std::size_t row, std::size_t col) const {
        return entries_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    }

    /// Register position of a physical label; throws Error{Validation} if absent.
    int position_of(int label) const;

  private:
    std::vector<int> labels_;
    Eigen::MatrixXcd entries_;
};

struct PhysicalityReport {
    double hermiticity_error = 0.0;  // max |rho - rho^dagger|
    double trace_error = 0.0;        // |tr rho - 1|
    double min_eigenvalue = 0.0;
};

PhysicalityReport physicality(const DensityMatrix &rho);

/// Throws Error{Numerical} unless Hermitian and unit-trace to 1e-10 with
/// eigenvalues >= -1e-9.
void require_physical(const DensityMatrix &rho);

// Primitive channels, addressed by register position.
void apply_unitary(DensityMatrix &rho, int position, const Eigen::Matrix2cd &u);
void apply_cnot(DensityMatrix &rho, int control_position, int target_position);
void depolarize(DensityMatrix &rho, int position, double p);
void depolarize_pair(DensityMatrix &rho, int position_a, int position_b, double p);
void amplitude_damp(DensityMatrix &rho, int position, double gamma);
/// Multiplies coherences across `position` by `factor` (phase-flip channel with p = (1 - factor) / 2).
void phase_damp(DensityMatrix &rho, int position, double factor);

/// Gate unitary followed by depolarizing noise on the operands; identity gates
/// apply idle relaxation to their operand for their duration. With
/// gate_time_noise, spectators idle for the gate duration too. Measurement is
/// a no-op here (see parity_expectation / sample_counts).
void apply_gate(DensityMatrix &rho, const Gate &gate, const NoiseModel &noise);

/// Amplitude damping with gamma = 1 - exp(-t/T1) then phase flip with
/// p = (1 - exp(-t/Tphi)) / 2, 1/Tphi = 1/T2 - 1/(2 T1). Coherences decay as exp(-t/T2).
void apply_idle_noise(DensityMatrix &rho, int qubit_label, double duration_ns, const NoiseModel &noise);

/// rho_xy *= exp(-(m_x - m_y)^2 t / T2c) with m_z = (#zeros - #ones) / 2: the
/// Gaussian average of a shared Z rotation with phase variance 2 t / T2c.
void apply_collective_dephasing(DensityMatrix &rho, double duration_ns, double t2c_us);

/// Idle relaxation on every register qubit plus collective dephasing, for a
/// continuous delay that is not quantized into identity gates.
void apply_delay(DensityMatrix &rho, double tau_ns, const NoiseModel &noise);

/// Applies a gate sequence. Consecutive identity gates form one delay block;
/// collective dephasing is applied once per block for its longest per-qubit
/// idle time (and per gate duration when gate_time_noise is set).
void run_gates(DensityMatrix &rho, std::span<const Gate> gates, const NoiseModel &noise);

/// Evolves |0...0> through the whole circuit.
DensityMatrix evolve(const Circuit &circuit, const NoiseModel &noise);

/// |rho_{1..1,0..0}| + |rho_{0..0,1..1}|.
double coherence_of(const DensityMatrix &rho);

/// Exact expected parity P_even - P_odd of a computational-basis readout,
/// including per-qubit readout bit flips.
double parity_expectation(const DensityMatrix &rho, const NoiseModel &noise);

struct Counts {
    /// Bitstrings list register position 0 first.
    std::map<std::string, long long> counts;
    long long shots = 0;
};

/// Draws `shots` outcomes from the diagonal of rho, then flips each bit with
/// its qubit's readout error. Deterministic in `seed`.
Counts sample_counts(const DensityMatrix &rho, long long shots, const NoiseModel &noise, std::uint64_t seed);

/// Uniform double in [0, 1) from a 64-bit generator output.
inline double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace ghzdeco
