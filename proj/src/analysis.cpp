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

#include "ghzdeco/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "ghzdeco/error.hpp"
#include "least_squares.hpp"

namespace ghzdeco {

double SinusoidFit::evaluate(double phi) const {
    return amplitude * std::sin(n_qubits * phi + phase) + offset;
}

namespace {

/// Replacement error for a sampled point that came out all-even or all-odd,
/// using the rule-of-succession estimate p = 1 / (n + 2).
double delta_p_floor(long long shots) {
    const double n = static_cast<double>(shots);
    const double p = 1.0 / (n + 2.0);
    return 2.0 * std::sqrt(p * (1.0 - p) / n);
}

}  // namespace

SinusoidFit fit_parity(const ParityDataset &dataset, const FitParityOptions &options) {
    const int n = dataset.n_qubits;
    if (n < 1) throw Error(ErrorCategory::Fit, "fit_parity: dataset has no qubit count");
    const std::size_t m = dataset.points.size();
    const int params = options.with_offset ? 3 : 2;
    if (m < 3 || static_cast<int>(m) < params + 1) {
        throw Error(ErrorCategory::Fit, "fit_parity: need at least " + std::to_string(std::max(3, params + 1)) + " points");
    }

    const bool exact = std::all_of(dataset.points.begin(), dataset.points.end(),
                                   [](const ParityPoint &p) { return p.shots == 0 && p.delta_p == 0.0; });

    Eigen::MatrixXd a(static_cast<Eigen::Index>(m), params);
    Eigen::VectorXd y(static_cast<Eigen::Index>(m));
    Eigen::VectorXd w(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        const auto &p = dataset.points[i];
        const auto r = static_cast<Eigen::Index>(i);
        a(r, 0) = std::sin(n * p.phi);
        a(r, 1) = std::cos(n * p.phi);
        if (options.with_offset) a(r, 2) = 1.0;
        y(r) = p.parity;
        if (exact) {
            w(r) = 1.0;
        } else {
            double d = p.delta_p;
            if (d == 0.0 && p.shots > 0) d = delta_p_floor(p.shots);
            w(r) = d > 0.0 ? 1.0 / (d * d) : 0.0;
        }
    }
    const auto sol = detail::weighted_least_squares(a, y, w);
    Eigen::MatrixXd cov = sol.cov;
    if (exact) cov *= sol.dof > 0 ? sol.rss / sol.dof : 0.0;

    const double sa = sol.coef(0);
    const double cb = sol.coef(1);
    SinusoidFit fit;
    fit.n_qubits = n;
    fit.weighted = !exact;
    fit.with_offset = options.with_offset;
    fit.rss = sol.rss;
    fit.amplitude = std::hypot(sa, cb);
    fit.phase = wrap_angle(std::atan2(cb, sa));
    if (fit.amplitude > 0.0) {
        const double c2 = fit.amplitude * fit.amplitude;
        const double var_amp = (sa * sa * cov(0, 0) + cb * cb * cov(1, 1) + 2.0 * sa * cb * cov(0, 1)) / c2;
        const double var_phase = (cb * cb * cov(0, 0) + sa * sa * cov(1, 1) - 2.0 * sa * cb * cov(0, 1)) / (c2 * c2);
        fit.amplitude_se = std::sqrt(std::max(var_amp, 0.0));
        fit.phase_se = std::sqrt(std::max(var_phase, 0.0));
    } else {
        fit.amplitude_se = std::sqrt(std::max(0.5 * (cov(0, 0) + cov(1, 1)), 0.0));
        fit.phase_se = std::numeric_limits<double>::infinity();
    }
    if (options.with_offset) {
        fit.offset = sol.coef(2);
        fit.offset_se = std::sqrt(std::max(cov(2, 2), 0.0));
    }
    return fit;
}

LineFit fit_initial_coherence(const std::vector<CoherencePoint> &points) {
    std::set<int> distinct;
    for (const auto &p : points) distinct.insert(p.n_qubits);
    if (distinct.size() < 2) throw Error(ErrorCategory::Fit, "initial-coherence fit needs at least 2 distinct N");

    const auto m = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXd a(m, 2);
    Eigen::VectorXd y(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = points[static_cast<std::size_t>(i)].n_qubits;
        y(i) = points[static_cast<std::size_t>(i)].coherence;
    }
    const auto sol = detail::weighted_least_squares(a, y, Eigen::VectorXd::Ones(m));
    const double s2 = sol.dof > 0 ? sol.rss / sol.dof : 0.0;
    LineFit fit;
    fit.intercept = sol.coef(0);
    fit.slope = sol.coef(1);
    fit.intercept_se = std::sqrt(sol.cov(0, 0) * s2);
    fit.slope_se = std::sqrt(sol.cov(1, 1) * s2);
    const double tss = (y.array() - y.mean()).square().sum();
    fit.r_squared = tss > 0.0 ? 1.0 - sol.rss / tss : 1.0;
    return fit;
}

double first_order_initial_coherence(const CouplingGraph &graph, const QubitChain &chain, double p1, double p2) {
    const Circuit c = append_analysis_and_measure(build_ghz(graph, chain), 0.0);
    double loss = 0.0;
    for (const Gate &g : c.gates) {
        if (g.kind == GateKind::H || g.kind == GateKind::U3) loss += p1;
        if (g.kind == GateKind::CNOT) loss += p2;
    }
    return 1.0 - loss;
}

DecayFit fit_decay(const std::vector<DecayPoint> &points) {
    const std::size_t m = points.size();
    if (m < 3) throw Error(ErrorCategory::Fit, "fit_decay: need at least 3 points");
    for (const auto &p : points) {
        if (!(p.coherence > 0.0)) throw Error(ErrorCategory::Fit, "fit_decay: coherences must be positive");
        if (!(p.tau_ns >= 0.0)) throw Error(ErrorCategory::Fit, "fit_decay: delays must be nonnegative");
    }
    const bool weighted = std::all_of(points.begin(), points.end(), [](const DecayPoint &p) { return p.sigma > 0.0; });

    const auto rows = static_cast<Eigen::Index>(m);
    Eigen::VectorXd tau(rows);
    Eigen::VectorXd c(rows);
    Eigen::VectorXd w(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto &p = points[static_cast<std::size_t>(i)];
        tau(i) = p.tau_ns * 1e-3;
        c(i) = p.coherence;
        w(i) = weighted ? 1.0 / (p.sigma * p.sigma) : 1.0;
    }

    // Seed: ln C = ln c_init - tau * rate, with var(ln C) ~ (sigma / C)^2.
    Eigen::MatrixXd a(rows, 2);
    a.col(0).setOnes();
    a.col(1) = -tau;
    const Eigen::VectorXd log_w = w.cwiseProduct(c.cwiseAbs2());
    const auto seed = detail::weighted_least_squares(a, c.array().log().matrix(), log_w);
    double amp = std::exp(seed.coef(0));
    double rate = seed.coef(1);
    if (!(rate > 0.0)) throw Error(ErrorCategory::Fit, "fit_decay: data do not decay (nonpositive fitted T2N)");

    auto residual_ss = [&](double amp_, double rate_) {
        const Eigen::VectorXd model = amp_ * (-rate_ * tau.array()).exp().matrix();
        return (c - model).cwiseAbs2().dot(w);
    };

    DecayFit fit;
    fit.weighted = weighted;
    double rss = residual_ss(amp, rate);
    bool converged = false;
    for (int it = 1; it <= 100; ++it) {
        fit.iterations = it;
        const Eigen::ArrayXd e = (-rate * tau.array()).exp();
        Eigen::MatrixXd j(rows, 2);
        j.col(0) = e.matrix();
        j.col(1) = (-amp * tau.array() * e).matrix();
        const Eigen::VectorXd r = c - amp * e.matrix();
        const auto step = detail::weighted_least_squares(j, r, w).coef;

        double scale = 1.0;
        double next_amp = amp + step(0);
        double next_rate = rate + step(1);
        double next_rss = residual_ss(next_amp, next_rate);
        int halvings = 0;
        while ((!(next_rss <= rss) || !(next_rate > 0.0)) && halvings < 40) {
            scale *= 0.5;
            next_amp = amp + scale * step(0);
            next_rate = rate + scale * step(1);
            next_rss = residual_ss(next_amp, next_rate);
            ++halvings;
        }
        const double rel = std::max(std::abs(scale * step(0)) / std::abs(amp), std::abs(scale * step(1)) / std::abs(rate));
        if (halvings == 40) {
            // No descent direction left at double precision: already at the minimum.
            converged = true;
            break;
        }
        amp = next_amp;
        rate = next_rate;
        rss = next_rss;
        if (rel < 1e-10) {
            converged = true;
            break;
        }
    }
    if (!converged) throw Error(ErrorCategory::Fit, "fit_decay: Gauss-Newton did not converge in 100 iterations");
    if (!(rate > 0.0) || !std::isfinite(rate)) throw Error(ErrorCategory::Fit, "fit_decay: nonpositive fitted T2N");
    // A decay of less than 1e-9 over the whole span is numerically flat data.
    if (rate * tau.maxCoeff() < 1e-9) throw Error(ErrorCategory::Fit, "fit_decay: no measurable decay over the delay span");

    const Eigen::ArrayXd e = (-rate * tau.array()).exp();
    Eigen::MatrixXd j(rows, 2);
    j.col(0) = e.matrix();
    j.col(1) = (-amp * tau.array() * e).matrix();
    const auto lin = detail::weighted_least_squares(j, c - amp * e.matrix(), w);
    Eigen::MatrixXd cov = lin.cov;
    if (!weighted) cov *= lin.dof > 0 ? rss / lin.dof : 0.0;

    fit.c_init = amp;
    fit.t2n_us = 1.0 / rate;
    fit.c_init_se = std::sqrt(std::max(cov(0, 0), 0.0));
    fit.t2n_se_us = std::sqrt(std::max(cov(1, 1), 0.0)) / (rate * rate);
    if (fit.c_init < 0.0 || fit.c_init > 1.05) {
        std::ostringstream msg;
        msg << "fit_decay: fitted initial coherence " << fit.c_init << " lies outside [0, 1.05]";
        throw Error(ErrorCategory::Fit, msg.str());
    }
    return fit;
}

std::vector<RatioPoint> propagate_ratios(const std::vector<T2Value> &values) {
    const T2Value *single = nullptr;
    for (const auto &v : values) {
        if (!(v.t2_us > 0.0)) {
            throw Error(ErrorCategory::Validation, "T2 for N=" + std::to_string(v.n_qubits) + " must be positive");
        }
        if (v.sigma_us < 0.0) throw Error(ErrorCategory::Validation, "T2 uncertainties must be nonnegative");
        if (v.n_qubits == 1) single = &v;
    }
    if (single == nullptr) throw Error(ErrorCategory::Validation, "ratios need the single-qubit T2 (N=1)");

    std::vector<RatioPoint> out;
    out.reserve(values.size());
    const double t1q = single->t2_us;
    const double s1q = single->sigma_us;
    for (const auto &v : values) {
        RatioPoint r;
        r.n_qubits = v.n_qubits;
        if (v.n_qubits == 1) {
            r.ratio = 1.0;
            r.sigma = 0.0;
        } else {
            r.ratio = t1q / v.t2_us;
            r.sigma = std::hypot(s1q / v.t2_us, t1q * v.sigma_us / (v.t2_us * v.t2_us));
        }
        out.push_back(r);
    }
    return out;
}

std::string_view scaling_model_name(ScalingModel model) {
    switch (model) {
        case ScalingModel::Linear:
            return "linear";
        case ScalingModel::QuadraticNoLinear:
            return "quadratic_no_linear";
        case ScalingModel::QuadraticNoConstant:
            return "quadratic_no_constant";
    }
    return "?";
}

const Coefficient &ScalingFit::coefficient(std::string_view name) const {
    for (const auto &c : coefficients) {
        if (c.name == name) return c;
    }
    throw Error(ErrorCategory::Validation, "scaling model has no coefficient '" + std::string(name) + "'");
}

namespace {

ScalingFit fit_one(ScalingModel model, const std::vector<RatioPoint> &ratios, const Eigen::VectorXd &w, bool weighted) {
    const auto m = static_cast<Eigen::Index>(ratios.size());
    Eigen::MatrixXd a(m, 2);
    Eigen::VectorXd y(m);
    std::array<std::string, 2> names;
    bool has_constant = false;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double n = ratios[static_cast<std::size_t>(i)].n_qubits;
        y(i) = ratios[static_cast<std::size_t>(i)].ratio;
        switch (model) {
            case ScalingModel::Linear:
                a(i, 0) = n;
                a(i, 1) = 1.0;
                names = {"beta", "alpha"};
                has_constant = true;
                break;
            case ScalingModel::QuadraticNoLinear:
                a(i, 0) = n * n;
                a(i, 1) = 1.0;
                names = {"gamma", "alpha"};
                has_constant = true;
                break;
            case ScalingModel::QuadraticNoConstant:
                a(i, 0) = n;
                a(i, 1) = n * n;
                names = {"beta", "gamma"};
                break;
        }
    }
    const auto sol = detail::weighted_least_squares(a, y, w);
    if (sol.dof < 1) throw Error(ErrorCategory::Fit, "scaling fit is underdetermined");

    ScalingFit fit;
    fit.model = model;
    fit.weighted = weighted;
    fit.dof = sol.dof;
    fit.reduced_chi2 = sol.rss / sol.dof;
    const boost::math::students_t dist(static_cast<double>(sol.dof));
    const double t = boost::math::quantile(boost::math::complement(dist, (1.0 - kScalingConfidence) / 2.0));
    for (int k = 0; k < 2; ++k) {
        Coefficient c;
        c.name = names[static_cast<std::size_t>(k)];
        c.value = sol.coef(k);
        c.se = std::sqrt(std::max(sol.cov(k, k) * fit.reduced_chi2, 0.0));
        c.ci_low = c.value - t * c.se;
        c.ci_high = c.value + t * c.se;
        fit.coefficients.push_back(std::move(c));
    }
    double tss = 0.0;
    if (has_constant) {
        const double mean = w.dot(y) / w.sum();
        tss = w.dot((y.array() - mean).square().matrix());
    } else {
        tss = w.dot(y.cwiseAbs2());
    }
    fit.r_squared = tss > 0.0 ? 1.0 - sol.rss / tss : (sol.rss == 0.0 ? 1.0 : 0.0);
    return fit;
}

}  // namespace

std::array<ScalingFit, 3> fit_scaling(const std::vector<RatioPoint> &ratios, bool weighted) {
    if (ratios.size() < 3) throw Error(ErrorCategory::Fit, "scaling fits need at least 3 points");
    const auto m = static_cast<Eigen::Index>(ratios.size());
    Eigen::VectorXd w = Eigen::VectorXd::Ones(m);
    if (weighted) {
        for (Eigen::Index i = 0; i < m; ++i) {
            const double s = ratios[static_cast<std::size_t>(i)].sigma;
            if (!(s > 0.0)) {
                throw Error(ErrorCategory::Validation, "weighted scaling fit: ratio for N=" +
                                                           std::to_string(ratios[static_cast<std::size_t>(i)].n_qubits) +
                                                           " has no positive uncertainty");
            }
            w(i) = 1.0 / (s * s);
        }
    }
    return {fit_one(ScalingModel::Linear, ratios, w, weighted),
            fit_one(ScalingModel::QuadraticNoLinear, ratios, w, weighted),
            fit_one(ScalingModel::QuadraticNoConstant, ratios, w, weighted)};
}

double predict_t2n_from_calibration(const std::map<int, double> &t2_us_by_qubit, const QubitChain &chain) {
    if (chain.qubits.empty()) throw Error(ErrorCategory::Validation, "empty chain");
    double rate = 0.0;
    for (int q : chain.qubits) {
        auto it = t2_us_by_qubit.find(q);
        if (it == t2_us_by_qubit.end()) {
            throw Error(ErrorCategory::Validation, "calibration has no T2 for qubit " + std::to_string(q));
        }
        if (!(it->second > 0.0)) {
            throw Error(ErrorCategory::Validation, "calibration T2 for qubit " + std::to_string(q) + " must be positive");
        }
        rate += 1.0 / it->second;
    }
    return 1.0 / rate;
}

std::vector<T2Value> reference_t2_table() {
    return {{1, 48.34, 1.56}, {2, 26.15, 1.67}, {3, 16.11, 0.89}, {4, 12.25, 0.62},
            {5, 10.83, 0.75}, {6, 7.63, 0.36},  {7, 6.32, 0.83},  {8, 5.49, 0.38}};
}

std::vector<std::pair<int, double>> reference_calibration_t2_table() {
    return {{1, 44.4}, {2, 24.52}, {3, 17.21}, {4, 14.75}, {5, 10.97}, {6, 9.88}, {7, 5.99}, {8, 5.40}};
}

}  // namespace ghzdeco
