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

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ghzdeco/analysis.hpp"
#include "ghzdeco/config.hpp"
#include "ghzdeco/protocol.hpp"
#include "ghzdeco/topology.hpp"

namespace ghzdeco {

struct RouteReport {
    QubitChain chain;
    std::size_t gate_count = 0;  // GHZ preparation only
    int h_count = 0;
    int cnot_count = 0;
    std::string qasm;

    std::string text() const;
};

/// Minimal-overhead chain of `n` qubits (or the evaluation of an explicit
/// `chain`), with the gate count of its GHZ preparation.
RouteReport cmd_route(const CouplingGraph &graph, int n, const std::optional<std::vector<int>> &chain = std::nullopt,
                      std::optional<int> anchor = std::nullopt);

struct SimulateResult {
    std::string config_hash;
    std::string manifest_path;
    std::vector<std::string> dataset_files;
    std::vector<ParityDataset> datasets;
};

/// Runs every (N, tau) scan of the config and writes one CSV per scan, the
/// prepared circuits as OpenQASM, and manifest.json (config, hash, seeds).
SimulateResult cmd_simulate(const RunConfig &config);

struct AnalyzeOptions {
    /// Accept datasets produced by different configs.
    bool force = false;
    bool svg = false;
    bool with_offset = false;
    /// Defaults to the dataset directory.
    std::string output_dir;
};

struct ScanFit {
    int n_qubits = 0;
    double tau_ns = 0.0;
    bool sampled = false;
    SinusoidFit fit;
};

struct AnalyzeReport {
    std::string config_hash;  // empty if inputs carried none
    std::vector<ScanFit> scans;
    std::map<int, DecayFit> decays;
    std::vector<RatioPoint> ratios;
    std::optional<std::array<ScalingFit, 3>> scaling_unweighted;
    std::optional<std::array<ScalingFit, 3>> scaling_weighted;
    std::optional<LineFit> initial_coherence;
    std::vector<std::string> notes;
    std::vector<std::string> files;

    std::string text() const;
};

/// Fits every dataset CSV found in `dataset_dir` and writes report.json,
/// fit tables, plot-data CSVs and (optionally) SVG figures.
AnalyzeReport cmd_analyze(const std::string &dataset_dir, const AnalyzeOptions &options = {});

/// Published scaling-fit statistics of the reference ibmqx5 experiment.
struct PublishedScaling {
    std::array<double, 3> r_squared{0.996, 0.983, 0.998};
    std::array<double, 2> linear_beta_ci{0.968, 1.148};
    std::array<double, 2> quad_no_linear_gamma_ci{0.113, 0.160};
    std::array<double, 2> quad_no_constant_beta_ci{0.561, 1.103};
    std::array<double, 2> quad_no_constant_gamma_ci{-0.007, 0.075};
};

struct VariantComparison {
    bool weighted = false;
    std::array<ScalingFit, 3> fits;
    std::array<double, 3> r_squared_delta{};
    /// Absolute deviation of every published CI endpoint, in the order of PublishedScaling.
    std::vector<double> ci_delta;
    /// All |R^2 delta| <= 0.01 and linear-model beta CI endpoints within 0.05.
    bool within_tolerance = false;
    double total_deviation = 0.0;
};

struct CalibrationRow {
    int n_qubits = 0;
    std::vector<int> chain;
    double predicted_us = 0.0;
    double published_us = 0.0;
};

struct ReproduceReport {
    std::vector<T2Value> table;
    std::vector<RatioPoint> ratios;
    VariantComparison unweighted;
    VariantComparison weighted;
    /// The variant with the smaller total deviation from the published statistics.
    bool weighted_matches_better = false;
    std::vector<CalibrationRow> calibration;

    std::string text() const;
};

/// Ratio and scaling analysis of the embedded hardware T2^(N) table, compared
/// with the published statistics for both weighting choices; with a
/// calibration, also the harmonic-sum T2^(N) predictions along the published chains.
ReproduceReport cmd_reproduce_paper(const std::optional<CalibrationFile> &calibration = std::nullopt);

/// Ratios prepared for a weighted scaling fit: r_1 gets the error of a ratio
/// of two independent measurements of T2^(1), sqrt(2) sigma_1 / T2^(1).
std::vector<RatioPoint> ratios_for_weighted_fit(const std::vector<T2Value> &values);

}  // namespace ghzdeco
