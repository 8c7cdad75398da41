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
#include <string>
#include <string_view>
#include <vector>

#include "ghzdeco/protocol.hpp"
#include "ghzdeco/topology.hpp"

namespace ghzdeco {

/// P(phi) = C sin(N phi + delta) [+ offset].
struct SinusoidFit {
    int n_qubits = 0;
    double amplitude = 0.0;
    double phase = 0.0;  // (-pi, pi]
    double offset = 0.0;
    double amplitude_se = 0.0;
    double phase_se = 0.0;
    double offset_se = 0.0;
    /// Weighted residual sum of squares.
    double rss = 0.0;
    bool weighted = false;
    bool with_offset = false;

    double evaluate(double phi) const;
};

struct FitParityOptions {
    bool with_offset = false;
};

/// Weighted linear least squares on {sin(N phi), cos(N phi)}. Sampled points
/// are weighted by 1/delta_p^2; exact points (shots == 0) get unit weight and
/// their standard errors are scaled by the residual variance.
SinusoidFit fit_parity(const ParityDataset &dataset, const FitParityOptions &options = {});

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double intercept_se = 0.0;
    double slope_se = 0.0;
    double r_squared = 0.0;
};

struct CoherencePoint {
    int n_qubits = 0;
    double coherence = 0.0;
};

/// Ordinary least-squares line C(N, 0) ~ intercept + slope N.
LineFit fit_initial_coherence(const std::vector<CoherencePoint> &points);

/// 1 - (single-qubit gate count) p1 - (CNOT count) p2 for the GHZ
/// preparation plus analysis rotations on `chain`.
double first_order_initial_coherence(const CouplingGraph &graph, const QubitChain &chain, double p1, double p2);

struct DecayPoint {
    double tau_ns = 0.0;
    double coherence = 0.0;
    /// Standard error of `coherence`; 0 requests an unweighted fit.
    double sigma = 0.0;
};

struct DecayFit {
    double c_init = 0.0;
    double t2n_us = 0.0;
    double c_init_se = 0.0;
    double t2n_se_us = 0.0;
    int iterations = 0;
    bool weighted = false;
};

/// c_init exp(-tau / T2N): log-linear seed, then Gauss-Newton refinement until
/// the relative parameter step drops below 1e-10 (at most 100 iterations).
/// Points are weighted by 1/sigma^2 only when every sigma is positive.
DecayFit fit_decay(const std::vector<DecayPoint> &points);

struct T2Value {
    int n_qubits = 0;
    double t2_us = 0.0;
    double sigma_us = 0.0;
};

struct RatioPoint {
    int n_qubits = 0;
    double ratio = 0.0;  // T2^(1) / T2^(N)
    double sigma = 0.0;
};

/// r_N = T2^(1) / T2^(N) with first-order error propagation; r_1 = 1 with zero error.
std::vector<RatioPoint> propagate_ratios(const std::vector<T2Value> &values);

enum class ScalingModel {
    Linear,               // beta N + alpha
    QuadraticNoLinear,    // gamma N^2 + alpha
    QuadraticNoConstant,  // gamma N^2 + beta N
};

std::string_view scaling_model_name(ScalingModel model);

struct Coefficient {
    std::string name;
    double value = 0.0;
    double se = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
};

struct ScalingFit {
    ScalingModel model = ScalingModel::Linear;
    std::vector<Coefficient> coefficients;
    double r_squared = 0.0;
    double reduced_chi2 = 0.0;
    int dof = 0;
    bool weighted = false;

    const Coefficient &coefficient(std::string_view name) const;
};

inline constexpr double kScalingConfidence = 0.99;

/// Fits all three scaling models. Confidence intervals use Student-t
/// quantiles with (points - parameters) degrees of freedom on the covariance
/// scaled by the reduced chi-square. R^2 is taken about the weighted mean for
/// models with a constant term and about zero otherwise.
std::array<ScalingFit, 3> fit_scaling(const std::vector<RatioPoint> &ratios, bool weighted);

/// Uncorrelated-dephasing prediction 1 / sum_i (1 / T2_i) over the chain.
double predict_t2n_from_calibration(const std::map<int, double> &t2_us_by_qubit, const QubitChain &chain);

/// Hardware-measured GHZ coherence times on ibmqx5, N = 1..8, with fit errors.
std::vector<T2Value> reference_t2_table();

/// Calibration-based T2^(N) predictions published alongside those measurements.
std::vector<std::pair<int, double>> reference_calibration_t2_table();

}  // namespace ghzdeco
