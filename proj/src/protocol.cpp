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

#include "ghzdeco/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "ghzdeco/error.hpp"
#include "parallel.hpp"

namespace ghzdeco {

std::string_view mode_name(Mode mode) { return mode == Mode::Exact ? "exact" : "sampled"; }

Mode parse_mode(std::string_view name) {
    if (name == "exact") return Mode::Exact;
    if (name == "sampled") return Mode::Sampled;
    throw Error(ErrorCategory::Validation, "unknown mode '" + std::string(name) + "' (expected exact or sampled)");
}

std::string_view delay_realization_name(DelayRealization d) {
    return d == DelayRealization::IdentityGates ? "identity_gates" : "continuous";
}

DelayRealization parse_delay_realization(std::string_view name) {
    if (name == "identity_gates") return DelayRealization::IdentityGates;
    if (name == "continuous") return DelayRealization::Continuous;
    throw Error(ErrorCategory::Validation,
                "unknown delay realization '" + std::string(name) + "' (expected identity_gates or continuous)");
}

void ExperimentPlan::validate() const {
    make_chain(graph, chain.qubits);
    if (chain.qubits.empty()) throw Error(ErrorCategory::Validation, "plan: empty chain");
    for (double tau : delays_ns) {
        if (!(tau >= 0.0) || !std::isfinite(tau)) throw Error(ErrorCategory::Validation, "plan: delays must be nonnegative");
        if (delay == DelayRealization::IdentityGates) identity_count_for_delay(tau, durations);
    }
    if (shots < 1) throw Error(ErrorCategory::Validation, "plan: shots must be at least 1");
    if (grid_size() < 3) throw Error(ErrorCategory::Validation, "plan: phi grid needs at least 3 points");
    if (workers < 1) throw Error(ErrorCategory::Validation, "plan: workers must be at least 1");
    noise.validate();
}

std::vector<double> phi_grid(int points) {
    if (points < 2) throw Error(ErrorCategory::Validation, "phi grid needs at least 2 points");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        grid[static_cast<std::size_t>(i)] = std::numbers::pi * i / (points - 1);
    }
    return grid;
}

ParityEstimate parity_of_counts(const Counts &counts) {
    long long total = 0;
    long long even = 0;
    for (const auto &[bits, k] : counts.counts) {
        total += k;
        if (std::count(bits.begin(), bits.end(), '1') % 2 == 0) even += k;
    }
    if (total <= 0) throw Error(ErrorCategory::Validation, "no shots to estimate parity from");
    const double n = static_cast<double>(total);
    const double p_even = static_cast<double>(even) / n;
    return {2.0 * p_even - 1.0, 2.0 * std::sqrt(p_even * (1.0 - p_even) / n)};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

Circuit prefix_circuit(const ExperimentPlan &plan, double tau_ns) {
    Circuit c = build_ghz(plan.graph, plan.chain, plan.durations);
    if (plan.delay == DelayRealization::IdentityGates) {
        c = append_delay(std::move(c), identity_count_for_delay(tau_ns, plan.durations));
    }
    return c;
}

std::size_t tau_index(const ExperimentPlan &plan, double tau_ns) {
    auto it = std::find(plan.delays_ns.begin(), plan.delays_ns.end(), tau_ns);
    if (it == plan.delays_ns.end()) {
        std::ostringstream msg;
        msg << "delay " << tau_ns << " ns is not one of the plan's delays";
        throw Error(ErrorCategory::Validation, msg.str());
    }
    return static_cast<std::size_t>(it - plan.delays_ns.begin());
}

ParityDataset scan(const ExperimentPlan &plan, double tau_ns, std::size_t tau_idx, int workers) {
    const Circuit prefix = prefix_circuit(plan, tau_ns);
    DensityMatrix prepared(prefix.register_qubits);
    run_gates(prepared, prefix.gates, plan.noise);
    if (plan.delay == DelayRealization::Continuous) apply_delay(prepared, tau_ns, plan.noise);

    const auto grid = phi_grid(plan.grid_size());
    ParityDataset out;
    out.n_qubits = plan.n_qubits();
    out.tau_ns = tau_ns;
    out.points.resize(grid.size());

    detail::parallel_for(grid.size(), workers, [&](std::size_t k) {
        const double phi = grid[k];
        const Circuit full = append_analysis_and_measure(prefix, phi);
        DensityMatrix rho = prepared;
        run_gates(rho, std::span<const Gate>(full.gates).subspan(prefix.gates.size()), plan.noise);
        ParityPoint &pt = out.points[k];
        pt.phi = phi;
        if (plan.mode == Mode::Exact) {
            pt.parity = parity_expectation(rho, plan.noise);
        } else {
            const auto counts =
                sample_counts(rho, plan.shots, plan.noise, derive_seed(plan.seed, plan.n_qubits(), tau_idx, k));
            const auto est = parity_of_counts(counts);
            pt.parity = est.parity;
            pt.delta_p = est.delta_p;
            pt.shots = plan.shots;
        }
    });
    return out;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, int n_qubits, std::size_t tau_index, std::size_t phi_index) {
    std::uint64_t h = splitmix64(master);
    h = splitmix64(h ^ static_cast<std::uint64_t>(n_qubits));
    h = splitmix64(h ^ static_cast<std::uint64_t>(tau_index));
    return splitmix64(h ^ static_cast<std::uint64_t>(phi_index));
}

Circuit experiment_circuit(const ExperimentPlan &plan, double tau_ns, double phi) {
    return append_analysis_and_measure(prefix_circuit(plan, tau_ns), phi);
}

ParityDataset run_parity_scan(const ExperimentPlan &plan, double tau_ns) {
    plan.validate();
    return scan(plan, tau_ns, tau_index(plan, tau_ns), plan.workers);
}

std::vector<ParityDataset> run_delay_sweep(const ExperimentPlan &plan) {
    plan.validate();
    std::vector<ParityDataset> out(plan.delays_ns.size());
    detail::parallel_for(out.size(), plan.workers, [&](std::size_t i) {
        out[i] = scan(plan, plan.delays_ns[i], i, 1);
    });
    std::stable_sort(out.begin(), out.end(),
                     [](const ParityDataset &a, const ParityDataset &b) { return a.tau_ns < b.tau_ns; });
    return out;
}

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string dataset_to_csv(const ParityDataset &dataset, std::string_view config_hash) {
    std::ostringstream out;
    if (!config_hash.empty()) out << "# config_hash=" << config_hash << "\n";
    out << "n_qubits,tau_ns,phi_rad,parity,delta_p,shots\n";
    for (const auto &p : dataset.points) {
        out << dataset.n_qubits << "," << fmt17(dataset.tau_ns) << "," << fmt17(p.phi) << "," << fmt17(p.parity)
            << "," << fmt17(p.delta_p) << "," << p.shots << "\n";
    }
    return out.str();
}

CsvDataset dataset_from_csv(std::string_view text) {
    CsvDataset out;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    bool first_row = true;
    auto fail = [&](const std::string &what) -> Error {
        return Error(ErrorCategory::Parse, "csv line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            constexpr std::string_view key = "# config_hash=";
            if (line.rfind(key, 0) == 0) out.config_hash = line.substr(key.size());
            continue;
        }
        if (!header_seen) {
            if (line != "n_qubits,tau_ns,phi_rad,parity,delta_p,shots") throw fail("unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() != 6) throw fail("expected 6 columns");
        try {
            std::size_t used = 0;
            int n = std::stoi(cells[0], &used);
            if (used != cells[0].size()) throw fail("bad n_qubits");
            double tau = std::stod(cells[1]);
            ParityPoint p{std::stod(cells[2]), std::stod(cells[3]), std::stod(cells[4]), std::stoll(cells[5])};
            if (first_row) {
                out.dataset.n_qubits = n;
                out.dataset.tau_ns = tau;
                first_row = false;
            } else if (n != out.dataset.n_qubits || tau != out.dataset.tau_ns) {
                throw Error(ErrorCategory::Validation,
                            "csv line " + std::to_string(line_no) + ": rows mix different (n_qubits, tau_ns)");
            }
            out.dataset.points.push_back(p);
        } catch (const std::logic_error &) {
            throw fail("unparseable number");
        }
    }
    if (!header_seen) throw Error(ErrorCategory::Parse, "csv: missing header");
    std::stable_sort(out.dataset.points.begin(), out.dataset.points.end(),
                     [](const ParityPoint &a, const ParityPoint &b) { return a.phi < b.phi; });
    return out;
}

}  // namespace ghzdeco
