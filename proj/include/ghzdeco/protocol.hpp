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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghzdeco/circuit.hpp"
#include "ghzdeco/simulator.hpp"
#include "ghzdeco/topology.hpp"

namespace ghzdeco {

enum class Mode { Exact, Sampled };

/// How a delay is put into the circuit: as 90 ns identity gates (the hardware
/// realization) or as one continuous idle period of arbitrary length.
enum class DelayRealization { IdentityGates, Continuous };

std::string_view mode_name(Mode mode);
Mode parse_mode(std::string_view name);
std::string_view delay_realization_name(DelayRealization d);
DelayRealization parse_delay_realization(std::string_view name);

struct ExperimentPlan {
    CouplingGraph graph;
    QubitChain chain;
    std::vector<double> delays_ns;
    /// 0 selects the default of 4N + 1 points.
    int phi_grid_size = 0;
    long long shots = 1000;
    Mode mode = Mode::Exact;
    DelayRealization delay = DelayRealization::IdentityGates;
    NoiseModel noise;
    std::uint64_t seed = 0;
    GateDurations durations;
    /// Upper bound on concurrently evaluated cells.
    int workers = 1;

    int n_qubits() const { return static_cast<int>(chain.size()); }
    int grid_size() const { return phi_grid_size > 0 ? phi_grid_size : 4 * n_qubits() + 1; }

    /// Throws Error{Validation} on any violated invariant.
    void validate() const;
};

/// `points` uniformly spaced angles covering [0, pi] inclusive.
std::vector<double> phi_grid(int points);

struct ParityPoint {
    double phi = 0.0;
    double parity = 0.0;
    double delta_p = 0.0;
    /// 0 marks an exact (noise-free estimate) point.
    long long shots = 0;
};

struct ParityDataset {
    int n_qubits = 0;
    double tau_ns = 0.0;
    std::vector<ParityPoint> points;
};

struct ParityEstimate {
    double parity = 0.0;
    double delta_p = 0.0;
};

/// P = P_even - P_odd with delta_p = 2 sqrt(P_even (1 - P_even) / n).
ParityEstimate parity_of_counts(const Counts &counts);

/// Seed for one (N, tau, phi) cell, derived only from its coordinates.
std::uint64_t derive_seed(std::uint64_t master, int n_qubits, std::size_t tau_index, std::size_t phi_index);

/// GHZ preparation, delay, analysis rotation and measurement for one angle.
/// With DelayRealization::Continuous no identity gates are emitted.
Circuit experiment_circuit(const ExperimentPlan &plan, double tau_ns, double phi);

/// Parity oscillation over the plan's phi grid at one delay.
ParityDataset run_parity_scan(const ExperimentPlan &plan, double tau_ns);

/// One dataset per plan delay, in plan order.
std::vector<ParityDataset> run_delay_sweep(const ExperimentPlan &plan);

/// CSV with header `n_qubits,tau_ns,phi_rad,parity,delta_p,shots`, optionally
/// preceded by a `# config_hash=<hex>` line. Floats use 17 significant digits.
std::string dataset_to_csv(const ParityDataset &dataset, std::string_view config_hash = {});

struct CsvDataset {
    ParityDataset dataset;
    std::string config_hash;  // empty when the file carries none
};

/// Throws Error{Parse} on malformed rows and Error{Validation} when rows
/// disagree on n_qubits or tau_ns.
CsvDataset dataset_from_csv(std::string_view text);

}  // namespace ghzdeco
