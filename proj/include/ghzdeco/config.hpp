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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ghzdeco/protocol.hpp"
#include "ghzdeco/simulator.hpp"
#include "ghzdeco/topology.hpp"

namespace ghzdeco {

/// Per-device calibration snapshot: per-qubit relaxation and readout, and
/// per-directed-coupling CNOT error.
struct CalibrationFile {
    std::string timestamp;
    std::map<int, QubitNoise> qubits;
    std::map<std::pair<int, int>, double> cnot_error;

    std::map<int, double> t2_by_qubit() const;
};

/// JSON document:
///   {"timestamp": "...",
///    "qubits": {"<label>": {"t1_us": .., "t2_us": .., "readout_error": ..}, ...},
///    "cnot_errors": [{"control": a, "target": b, "error": p}, ...]}
CalibrationFile parse_calibration(std::string_view text);
CalibrationFile load_calibration_file(const std::string &path);

enum class ChainPolicy {
    Reference,  // published ibmqx5 chains where available, else minimal
    Minimal,    // always find_chain
};

struct RunConfig {
    /// Empty selects the bundled ibmqx5 graph.
    std::string graph_file;
    int n_min = 1;
    int n_max = 8;
    ChainPolicy chain_policy = ChainPolicy::Reference;
    std::map<int, std::vector<int>> chains;
    NoiseModel noise;
    std::string calibration_file;
    /// Explicit delays per N; key 0 holds the default list.
    std::map<int, std::vector<double>> delays_ns;
    /// Alternatively: `delay_points` delays spread over [0, span] per N (key 0 = default).
    std::map<int, double> delay_span_ns;
    int delay_points = 0;
    long long shots = 1000;
    Mode mode = Mode::Exact;
    DelayRealization delay = DelayRealization::IdentityGates;
    int phi_grid_size = 0;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string output_dir = "ghzdeco-out";
    GateDurations durations;

    /// Canonical JSON of every field that influences results (excludes
    /// output_dir and workers).
    std::string canonical_json() const;
    /// 16 hex digit FNV-1a hash of canonical_json().
    std::string hash() const;
};

/// Parses a run configuration; errors name the offending field path.
RunConfig parse_run_config(std::string_view text);
RunConfig load_run_config(const std::string &path);

/// `points` delays from 0 to roughly `span_ns`; with identity gates every
/// delay is a multiple of the identity duration and duplicates are dropped.
std::vector<double> delay_grid(double span_ns, int points, DelayRealization delay, const GateDurations &durations = {});

/// The graph a config refers to.
CouplingGraph resolve_graph(const RunConfig &config);

/// Chain for N under the config's policy and overrides.
QubitChain resolve_chain(const RunConfig &config, const CouplingGraph &graph, int n);

/// Noise model with calibration data (if any) merged in.
NoiseModel resolve_noise(const RunConfig &config);

/// Delays for N after applying explicit lists or span generation.
std::vector<double> resolve_delays(const RunConfig &config, int n);

/// Fully resolved experiment plan for N.
ExperimentPlan make_plan(const RunConfig &config, int n);

/// Throws Error{Validation} if the config is inconsistent (N range, chains,
/// delays, noise, missing files).
void validate_run_config(const RunConfig &config);

/// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view data);

}  // namespace ghzdeco
