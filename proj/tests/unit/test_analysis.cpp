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

#include <cmath>
#include <numbers>
#include <random>

#include "ghzdeco/analysis.hpp"
#include "ghzdeco/error.hpp"
#include "ghzdeco/protocol.hpp"

using namespace ghzdeco;

namespace {

ParityDataset synthetic_scan(int n, double amp, double phase, double offset = 0.0) {
    ParityDataset ds;
    ds.n_qubits = n;
    for (double phi : phi_grid(4 * n + 1)) ds.points.push_back({phi, amp * std::sin(n * phi + phase) + offset, 0.0, 0});
    return ds;
}

std::vector<RatioPoint> ratios_from(std::function<double(int)> f, double rel_sigma) {
    std::vector<RatioPoint> r;
    for (int n = 1; n <= 8; ++n) r.push_back({n, f(n), rel_sigma * f(n)});
    return r;
}

}  // namespace

TEST(Analysis, SinusoidFitIsExactOnNoiselessData) {
    for (int n = 1; n <= 8; ++n) {
        const auto fit = fit_parity(synthetic_scan(n, 0.73, -0.4));
        EXPECT_NEAR(fit.amplitude, 0.73, 1e-12);
        EXPECT_NEAR(fit.phase, -0.4, 1e-12);
        EXPECT_LT(fit.rss, 1e-20);
    }
    FitParityOptions opts;
    opts.with_offset = true;
    const auto off = fit_parity(synthetic_scan(3, 0.5, 1.0, 0.05), opts);
    EXPECT_NEAR(off.offset, 0.05, 1e-12);
    EXPECT_NEAR(off.amplitude, 0.5, 1e-12);
}

TEST(Analysis, SinusoidAmplitudeIsNonnegative) {
    const auto fit = fit_parity(synthetic_scan(2, -0.6, 0.0));
    EXPECT_NEAR(fit.amplitude, 0.6, 1e-12);
    EXPECT_NEAR(std::abs(fit.phase), std::numbers::pi, 1e-12);
}

TEST(Analysis, WeightedSinusoidUsesDeltaP) {
    ParityDataset ds = synthetic_scan(2, 0.8, 0.1);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> noise(0.0, 0.02);
    for (auto &p : ds.points) {
        p.parity += noise(rng);
        p.delta_p = 0.02;
        p.shots = 1000;
    }
    const auto fit = fit_parity(ds);
    EXPECT_TRUE(fit.weighted);
    EXPECT_NEAR(fit.amplitude, 0.8, 5.0 * fit.amplitude_se);
    EXPECT_NEAR(fit.amplitude_se, 0.02 * std::sqrt(2.0 / ds.points.size()), 0.003);
}

TEST(Analysis, DecayFitRecoversParameters) {
    std::vector<DecayPoint> pts;
    for (int k = 0; k <= 10; ++k) {
        const double tau = 900.0 * k;
        pts.push_back({tau, 0.91 * std::exp(-tau * 1e-3 / 12.5), 0.0});
    }
    const auto d = fit_decay(pts);
    EXPECT_NEAR(d.c_init, 0.91, 1e-10);
    EXPECT_NEAR(d.t2n_us, 12.5, 1e-8);
    EXPECT_FALSE(d.weighted);
}

TEST(Analysis, WeightedDecayFitCoversTruth) {
    std::mt19937_64 rng(8);
    int covered = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        std::vector<DecayPoint> pts;
        for (int k = 0; k <= 8; ++k) {
            const double tau = 2000.0 * k;
            const double sigma = 0.01;
            std::normal_distribution<double> g(0.0, sigma);
            pts.push_back({tau, 0.9 * std::exp(-tau * 1e-3 / 20.0) + g(rng), sigma});
        }
        const auto d = fit_decay(pts);
        if (std::abs(d.t2n_us - 20.0) <= d.t2n_se_us) ++covered;
    }
    // One-sigma coverage near 68%.
    EXPECT_NEAR(covered / double(trials), 0.683, 0.08);
}

TEST(Analysis, DecayFitErrors) {
    EXPECT_THROW(fit_decay({{0.0, 1.0, 0.0}, {90.0, 0.9, 0.0}}), Error);
    EXPECT_THROW(fit_decay({{0.0, 1.0, 0.0}, {90.0, -0.1, 0.0}, {180.0, 0.5, 0.0}}), Error);
    EXPECT_THROW(fit_decay({{0.0, 0.5, 0.0}, {90.0, 0.6, 0.0}, {180.0, 0.7, 0.0}}), Error);
}

TEST(Analysis, RatioErrorsMatchMonteCarlo) {
    const std::vector<T2Value> values{{1, 48.34, 1.56}, {2, 26.15, 1.67}, {5, 10.83, 0.75}};
    const auto ratios = propagate_ratios(values);
    ASSERT_EQ(ratios.size(), 3u);
    EXPECT_DOUBLE_EQ(ratios[0].ratio, 1.0);
    EXPECT_DOUBLE_EQ(ratios[0].sigma, 0.0);
    std::mt19937_64 rng(12);
    std::normal_distribution<double> g;
    for (std::size_t i = 1; i < 3; ++i) {
        double s = 0.0, s2 = 0.0;
        const int m = 200000;
        for (int k = 0; k < m; ++k) {
            const double r = (48.34 + 1.56 * g(rng)) / (values[i].t2_us + values[i].sigma_us * g(rng));
            s += r;
            s2 += r * r;
        }
        const double sd = std::sqrt(s2 / m - (s / m) * (s / m));
        EXPECT_NEAR(ratios[i].sigma / sd, 1.0, 0.05) << "N=" << values[i].n_qubits;
    }
}

TEST(Analysis, ScalingFitsRecoverExactModels) {
    const auto lin = fit_scaling(ratios_from([](int n) { return 1.0 * n; }, 0.03), false);
    EXPECT_NEAR(lin[0].coefficient("beta").value, 1.0, 1e-12);
    EXPECT_NEAR(lin[0].coefficient("alpha").value, 0.0, 1e-12);
    EXPECT_NEAR(lin[0].r_squared, 1.0, 1e-12);

    const auto quad = fit_scaling(ratios_from([](int n) { return 1.0 * n * n; }, 0.03), true);
    EXPECT_NEAR(quad[1].coefficient("gamma").value, 1.0, 1e-10);
    EXPECT_GT(quad[1].r_squared, quad[0].r_squared);
    EXPECT_NEAR(quad[2].coefficient("beta").value, 0.0, 1e-10);
}

TEST(Analysis, WeightedScalingIsInvariantToCommonSigmaScale) {
    std::vector<RatioPoint> r;
    std::mt19937_64 rng(4);
    std::normal_distribution<double> g(0.0, 0.1);
    for (int n = 1; n <= 8; ++n) r.push_back({n, 1.05 * n + 0.1 + g(rng), 0.05 * n + 0.02});
    auto scaled = r;
    for (auto &p : scaled) p.sigma *= 7.0;
    const auto a = fit_scaling(r, true);
    const auto b = fit_scaling(scaled, true);
    for (int m = 0; m < 3; ++m) {
        EXPECT_NEAR(a[m].r_squared, b[m].r_squared, 1e-12);
        for (std::size_t k = 0; k < a[m].coefficients.size(); ++k) {
            EXPECT_NEAR(a[m].coefficients[k].value, b[m].coefficients[k].value, 1e-10);
            EXPECT_NEAR(a[m].coefficients[k].ci_low, b[m].coefficients[k].ci_low, 1e-10);
            EXPECT_NEAR(a[m].coefficients[k].ci_high, b[m].coefficients[k].ci_high, 1e-10);
        }
    }
}

TEST(Analysis, ScalingFitErrors) {
    EXPECT_THROW(fit_scaling({{1, 1.0, 0.0}, {2, 2.0, 0.1}}, false), Error);
    try {
        fit_scaling({{1, 1.0, 0.0}, {2, 2.0, 0.1}, {3, 3.1, 0.1}, {4, 4.0, 0.1}}, true);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.category(), ErrorCategory::Validation);
    }
    EXPECT_THROW(propagate_ratios({{2, 20.0, 1.0}}), Error);
    EXPECT_THROW(fit_scaling(ratios_from([](int) { return 1.0; }, 0.1), false)[0].coefficient("delta"), Error);
}

TEST(Analysis, ReferenceTableValues) {
    const auto t = reference_t2_table();
    ASSERT_EQ(t.size(), 8u);
    EXPECT_DOUBLE_EQ(t[7].t2_us, 5.49);
    EXPECT_DOUBLE_EQ(t[7].sigma_us, 0.38);
    EXPECT_NEAR(propagate_ratios(t)[1].ratio, 1.849, 5e-4);
}

TEST(Analysis, CalibrationPredictorIsHarmonic) {
    std::map<int, double> t2;
    for (int q = 0; q < 16; ++q) t2[q] = 44.4;
    for (int n = 1; n <= 8; ++n) {
        const QubitChain c = make_chain(ibmqx5(), *reference_chain(n));
        EXPECT_DOUBLE_EQ(predict_t2n_from_calibration(t2, c), 44.4 / n);
    }
    t2[2] = 20.0;
    EXPECT_NEAR(predict_t2n_from_calibration(t2, make_chain(ibmqx5(), {1, 2})), 1.0 / (1.0 / 44.4 + 1.0 / 20.0), 1e-12);
    t2.erase(3);
    EXPECT_THROW(predict_t2n_from_calibration(t2, make_chain(ibmqx5(), {2, 3})), Error);
}

TEST(Analysis, InitialCoherenceLineAndFirstOrderPrediction) {
    const auto line = fit_initial_coherence({{1, 0.9}, {2, 0.8}, {3, 0.7}});
    EXPECT_NEAR(line.slope, -0.1, 1e-12);
    EXPECT_NEAR(line.intercept, 1.0, 1e-12);
    EXPECT_THROW(fit_initial_coherence({{1, 0.9}, {1, 0.8}}), Error);
    // One H plus N-1 CNOTs on a chain without reversals.
    const QubitChain c = make_chain(ibmqx5(), {1, 2, 3});
    EXPECT_NEAR(first_order_initial_coherence(ibmqx5(), c, 0.01, 0.03), 1.0 - 0.01 * (1 + 3) - 0.03 * 2, 1e-12);
}
