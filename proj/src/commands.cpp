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

#include "ghzdeco/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "ghzdeco/error.hpp"
#include "json.hpp"
#include "plot.hpp"

namespace ghzdeco {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(double v, int digits = 4) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string join_labels(const std::vector<int> &v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

void write_file(const fs::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCategory::Io, "cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw Error(ErrorCategory::Io, "failed writing '" + path.string() + "'");
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCategory::Io, "cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void make_dirs(const fs::path &dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCategory::Io, "cannot create directory '" + dir.string() + "': " + ec.message());
}

std::string csv_prefix(const std::string &hash) { return hash.empty() ? "" : "# config_hash=" + hash + "\n"; }

}  // namespace

// ---------------------------------------------------------------- route

std::string RouteReport::text() const {
    std::ostringstream out;
    out << "chain: " << join_labels(chain.qubits) << "\n";
    out << "qubits: " << chain.size() << "\n";
    out << "reversed links: " << chain.reversal_count << "\n";
    out << "preparation gates: " << gate_count << " (" << h_count << " h, " << cnot_count << " cx)\n";
    return out.str();
}

RouteReport cmd_route(const CouplingGraph &graph, int n, const std::optional<std::vector<int>> &chain,
                      std::optional<int> anchor) {
    RouteReport r;
    if (chain) {
        if (static_cast<int>(chain->size()) != n) {
            throw Error(ErrorCategory::Validation, "explicit chain has " + std::to_string(chain->size()) +
                                                       " qubits but N = " + std::to_string(n));
        }
        r.chain = make_chain(graph, *chain);
    } else {
        r.chain = find_chain(graph, n, anchor);
    }
    const Circuit c = build_ghz(graph, r.chain);
    r.gate_count = c.gates.size();
    for (const Gate &g : c.gates) {
        if (g.kind == GateKind::H) ++r.h_count;
        if (g.kind == GateKind::CNOT) ++r.cnot_count;
    }
    r.qasm = emit_qasm(c);
    return r;
}

// ---------------------------------------------------------------- simulate

SimulateResult cmd_simulate(const RunConfig &config) {
    validate_run_config(config);
    const fs::path out_dir(config.output_dir);
    make_dirs(out_dir);
    make_dirs(out_dir / "circuits");

    SimulateResult result;
    result.config_hash = config.hash();
    json manifest;
    manifest["config_hash"] = result.config_hash;
    manifest["config"] = json::parse(config.canonical_json());
    json entries = json::array();

    for (int n = config.n_min; n <= config.n_max; ++n) {
        const ExperimentPlan plan = make_plan(config, n);
        const auto datasets = run_delay_sweep(plan);

        const fs::path qasm_path = out_dir / "circuits" / ("N" + std::to_string(n) + ".qasm");
        write_file(qasm_path, "// config_hash=" + result.config_hash + "\n" +
                                  emit_qasm(experiment_circuit(plan, plan.delays_ns.front(), 0.0)));
        result.dataset_files.reserve(result.dataset_files.size() + datasets.size());

        for (const ParityDataset &ds : datasets) {
            const auto idx = static_cast<std::size_t>(
                std::find(plan.delays_ns.begin(), plan.delays_ns.end(), ds.tau_ns) - plan.delays_ns.begin());
            const std::string name = "parity_N" + std::to_string(n) + "_tau" + fmt17(ds.tau_ns) + "ns.csv";
            write_file(out_dir / name, dataset_to_csv(ds, result.config_hash));
            result.dataset_files.push_back((out_dir / name).string());

            json seeds = json::array();
            for (std::size_t k = 0; k < ds.points.size(); ++k) seeds.push_back(derive_seed(plan.seed, n, idx, k));
            entries.push_back({{"file", name},
                               {"n_qubits", n},
                               {"tau_ns", ds.tau_ns},
                               {"tau_index", idx},
                               {"chain", plan.chain.qubits},
                               {"reversal_count", plan.chain.reversal_count},
                               {"cell_seeds", seeds}});
        }
        result.datasets.insert(result.datasets.end(), datasets.begin(), datasets.end());
    }
    manifest["datasets"] = entries;
    result.manifest_path = (out_dir / "manifest.json").string();
    write_file(result.manifest_path, manifest.dump(2) + "\n");
    return result;
}

// ---------------------------------------------------------------- analyze

std::vector<RatioPoint> ratios_for_weighted_fit(const std::vector<T2Value> &values) {
    auto ratios = propagate_ratios(values);
    for (const auto &v : values) {
        if (v.n_qubits != 1) continue;
        for (auto &r : ratios) {
            if (r.n_qubits == 1) r.sigma = std::numbers::sqrt2 * v.sigma_us / v.t2_us;
        }
    }
    return ratios;
}

namespace {

json fit_json(const ScalingFit &f) {
    json coeffs = json::array();
    for (const auto &c : f.coefficients) {
        coeffs.push_back({{"name", c.name}, {"value", c.value}, {"se", c.se}, {"ci_low", c.ci_low}, {"ci_high", c.ci_high}});
    }
    return {{"model", scaling_model_name(f.model)},
            {"weighted", f.weighted},
            {"r_squared", f.r_squared},
            {"reduced_chi2", f.reduced_chi2},
            {"dof", f.dof},
            {"confidence", kScalingConfidence},
            {"coefficients", coeffs}};
}

std::string scaling_text(const std::array<ScalingFit, 3> &fits) {
    std::ostringstream out;
    for (const auto &f : fits) {
        out << "  " << scaling_model_name(f.model) << ": R^2 = " << fmt(f.r_squared);
        for (const auto &c : f.coefficients) {
            out << ", " << c.name << " = " << fmt(c.value) << " [" << fmt(c.ci_low, 3) << ", " << fmt(c.ci_high, 3)
                << "]";
        }
        out << "\n";
    }
    return out.str();
}

void append_scaling_rows(std::ostringstream &csv, const char *variant, const std::array<ScalingFit, 3> &fits) {
    for (const auto &f : fits) {
        for (const auto &c : f.coefficients) {
            csv << variant << "," << scaling_model_name(f.model) << "," << c.name << "," << fmt17(c.value) << ","
                << fmt17(c.se) << "," << fmt17(c.ci_low) << "," << fmt17(c.ci_high) << "," << fmt17(f.r_squared)
                << "," << f.dof << "\n";
        }
    }
}

}  // namespace

std::string AnalyzeReport::text() const {
    std::ostringstream out;
    if (!config_hash.empty()) out << "config hash: " << config_hash << "\n";
    out << "parity fits:\n";
    for (const auto &s : scans) {
        out << "  N=" << s.n_qubits << " tau=" << s.tau_ns << " ns: C = " << fmt(s.fit.amplitude, 5) << " +- "
            << fmt(s.fit.amplitude_se, 5) << ", phase = " << fmt(s.fit.phase, 5) << "\n";
    }
    if (!decays.empty()) out << "coherence decay:\n";
    for (const auto &[n, d] : decays) {
        out << "  N=" << n << ": c_init = " << fmt(d.c_init, 5) << " +- " << fmt(d.c_init_se, 5)
            << ", T2 = " << fmt(d.t2n_us, 4) << " +- " << fmt(d.t2n_se_us, 4) << " us\n";
    }
    if (!ratios.empty()) out << "T2(1)/T2(N):\n";
    for (const auto &r : ratios) out << "  N=" << r.n_qubits << ": " << fmt(r.ratio) << " +- " << fmt(r.sigma) << "\n";
    if (scaling_unweighted) out << "scaling fits (unweighted):\n" << scaling_text(*scaling_unweighted);
    if (scaling_weighted) out << "scaling fits (weighted):\n" << scaling_text(*scaling_weighted);
    if (initial_coherence) {
        out << "initial coherence: C(N,0) = " << fmt(initial_coherence->intercept) << " + ("
            << fmt(initial_coherence->slope) << ") N\n";
    }
    for (const auto &n : notes) out << "note: " << n << "\n";
    return out.str();
}

AnalyzeReport cmd_analyze(const std::string &dataset_dir, const AnalyzeOptions &options) {
    const fs::path in_dir(dataset_dir);
    if (!fs::is_directory(in_dir)) throw Error(ErrorCategory::Io, "'" + dataset_dir + "' is not a directory");
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(in_dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && name.rfind("parity_N", 0) == 0 && entry.path().extension() == ".csv") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error(ErrorCategory::Validation, "no parity_N*.csv datasets in '" + dataset_dir + "'");

    AnalyzeReport report;
    std::set<std::string> hashes;
    std::vector<ParityDataset> datasets;
    for (const auto &f : files) {
        CsvDataset parsed;
        try {
            parsed = dataset_from_csv(read_file(f));
        } catch (const Error &e) {
            throw Error(e.category(), f.string() + ": " + e.what());
        }
        if (parsed.dataset.points.empty()) throw Error(ErrorCategory::Validation, f.string() + ": no data rows");
        hashes.insert(parsed.config_hash);
        datasets.push_back(std::move(parsed.dataset));
    }
    if (hashes.size() > 1 && !options.force) {
        throw Error(ErrorCategory::Validation,
                    "datasets come from " + std::to_string(hashes.size()) + " different configs (use --force to mix)");
    }
    if (hashes.size() == 1) report.config_hash = *hashes.begin();
    if (hashes.size() > 1) report.notes.push_back("mixed config hashes accepted by --force");

    std::sort(datasets.begin(), datasets.end(), [](const ParityDataset &a, const ParityDataset &b) {
        return std::tie(a.n_qubits, a.tau_ns) < std::tie(b.n_qubits, b.tau_ns);
    });
    for (std::size_t i = 1; i < datasets.size(); ++i) {
        if (datasets[i].n_qubits == datasets[i - 1].n_qubits && datasets[i].tau_ns == datasets[i - 1].tau_ns) {
            throw Error(ErrorCategory::Validation, "two datasets for N=" + std::to_string(datasets[i].n_qubits) +
                                                       ", tau=" + fmt17(datasets[i].tau_ns) + " ns");
        }
    }

    FitParityOptions fit_opts;
    fit_opts.with_offset = options.with_offset;
    std::map<int, std::vector<const ScanFit *>> by_n;
    report.scans.reserve(datasets.size());
    for (const auto &ds : datasets) {
        ScanFit s;
        s.n_qubits = ds.n_qubits;
        s.tau_ns = ds.tau_ns;
        s.sampled = std::any_of(ds.points.begin(), ds.points.end(), [](const ParityPoint &p) { return p.shots > 0; });
        s.fit = fit_parity(ds, fit_opts);
        report.scans.push_back(s);
    }
    for (const auto &s : report.scans) by_n[s.n_qubits].push_back(&s);

    std::vector<T2Value> t2_values;
    for (const auto &[n, scans] : by_n) {
        if (scans.size() < 3) {
            report.notes.push_back("N=" + std::to_string(n) + ": fewer than 3 delays, no decay fit");
            continue;
        }
        std::vector<DecayPoint> pts;
        for (const ScanFit *s : scans) pts.push_back({s->tau_ns, s->fit.amplitude, s->sampled ? s->fit.amplitude_se : 0.0});
        try {
            const DecayFit d = fit_decay(pts);
            report.decays[n] = d;
            t2_values.push_back({n, d.t2n_us, d.t2n_se_us});
        } catch (const Error &e) {
            report.notes.push_back("N=" + std::to_string(n) + ": " + e.what());
        }
    }

    if (report.decays.contains(1)) {
        report.ratios = propagate_ratios(t2_values);
        if (report.ratios.size() >= 3) {
            report.scaling_unweighted = fit_scaling(report.ratios, false);
            const auto wr = ratios_for_weighted_fit(t2_values);
            if (std::all_of(wr.begin(), wr.end(), [](const RatioPoint &r) { return r.sigma > 0.0; })) {
                report.scaling_weighted = fit_scaling(wr, true);
            } else {
                report.notes.push_back("weighted scaling fit skipped: some T2 values carry no uncertainty");
            }
        } else {
            report.notes.push_back("scaling fits need decay fits for at least 3 values of N");
        }
    } else if (!report.decays.empty()) {
        report.notes.push_back("no single-qubit decay fit, ratios and scaling fits skipped");
    }

    std::vector<CoherencePoint> initial;
    for (const auto &s : report.scans) {
        if (s.tau_ns == 0.0) initial.push_back({s.n_qubits, s.fit.amplitude});
    }
    std::set<int> initial_ns;
    for (const auto &p : initial) initial_ns.insert(p.n_qubits);
    if (initial_ns.size() >= 2) report.initial_coherence = fit_initial_coherence(initial);

    // ---- outputs
    const fs::path out_dir = options.output_dir.empty() ? in_dir : fs::path(options.output_dir);
    make_dirs(out_dir);
    const std::string prefix = csv_prefix(report.config_hash);
    auto emit = [&](const std::string &name, const std::string &content) {
        write_file(out_dir / name, content);
        report.files.push_back((out_dir / name).string());
    };

    {
        std::ostringstream csv;
        csv << prefix << "n_qubits,tau_ns,amplitude,amplitude_se,phase,phase_se,offset,offset_se,rss,weighted\n";
        for (const auto &s : report.scans) {
            csv << s.n_qubits << "," << fmt17(s.tau_ns) << "," << fmt17(s.fit.amplitude) << ","
                << fmt17(s.fit.amplitude_se) << "," << fmt17(s.fit.phase) << "," << fmt17(s.fit.phase_se) << ","
                << fmt17(s.fit.offset) << "," << fmt17(s.fit.offset_se) << "," << fmt17(s.fit.rss) << ","
                << (s.fit.weighted ? 1 : 0) << "\n";
        }
        emit("sinusoid_fits.csv", csv.str());
    }
    {
        std::ostringstream csv;
        csv << prefix << "n_qubits,c_init,c_init_se,t2n_us,t2n_se_us,weighted,iterations\n";
        for (const auto &[n, d] : report.decays) {
            csv << n << "," << fmt17(d.c_init) << "," << fmt17(d.c_init_se) << "," << fmt17(d.t2n_us) << ","
                << fmt17(d.t2n_se_us) << "," << (d.weighted ? 1 : 0) << "," << d.iterations << "\n";
        }
        emit("decay_fits.csv", csv.str());
    }
    if (!report.ratios.empty()) {
        std::ostringstream csv;
        csv << prefix << "n_qubits,ratio,sigma\n";
        for (const auto &r : report.ratios) csv << r.n_qubits << "," << fmt17(r.ratio) << "," << fmt17(r.sigma) << "\n";
        emit("ratios.csv", csv.str());
    }
    if (report.scaling_unweighted) {
        std::ostringstream csv;
        csv << prefix << "variant,model,coefficient,value,se,ci_low,ci_high,r_squared,dof\n";
        append_scaling_rows(csv, "unweighted", *report.scaling_unweighted);
        if (report.scaling_weighted) append_scaling_rows(csv, "weighted", *report.scaling_weighted);
        emit("scaling_fits.csv", csv.str());
    }
    if (report.initial_coherence) {
        std::ostringstream csv;
        csv << prefix << "n_qubits,coherence,linear_fit\n";
        for (const auto &p : initial) {
            csv << p.n_qubits << "," << fmt17(p.coherence) << ","
                << fmt17(report.initial_coherence->intercept + report.initial_coherence->slope * p.n_qubits) << "\n";
        }
        emit("initial_coherence.csv", csv.str());
    }

    // Plot data: coherence against delay, linear and logarithmic, plus fitted curves.
    std::vector<detail::PlotSeries> lin_series;
    std::vector<detail::PlotSeries> norm_series;
    {
        std::ostringstream csv;
        csv << prefix << "n_qubits,tau_ns,coherence,sigma,log_coherence,normalized,fit,log_fit\n";
        for (const auto &[n, scans] : by_n) {
            const DecayFit *d = report.decays.contains(n) ? &report.decays.at(n) : nullptr;
            detail::PlotSeries pts{"N=" + std::to_string(n), {}, {}, {}, true};
            detail::PlotSeries norm{"N=" + std::to_string(n), {}, {}, {}, true};
            for (const ScanFit *s : scans) {
                const double c = s->fit.amplitude;
                const double sig = s->sampled ? s->fit.amplitude_se : 0.0;
                const double fit = d ? d->c_init * std::exp(-s->tau_ns * 1e-3 / d->t2n_us) : std::nan("");
                const double c0 = d ? d->c_init : scans.front()->fit.amplitude;
                csv << n << "," << fmt17(s->tau_ns) << "," << fmt17(c) << "," << fmt17(sig) << ","
                    << fmt17(c > 0.0 ? std::log(c) : std::nan("")) << "," << fmt17(c0 > 0.0 ? c / c0 : std::nan(""))
                    << "," << fmt17(fit) << "," << fmt17(d ? std::log(d->c_init) - s->tau_ns * 1e-3 / d->t2n_us : std::nan(""))
                    << "\n";
                pts.x.push_back(s->tau_ns * 1e-3);
                pts.y.push_back(c);
                pts.err.push_back(sig);
                norm.x.push_back(s->tau_ns * 1e-3);
                norm.y.push_back(c0 > 0.0 ? c / c0 : std::nan(""));
            }
            lin_series.push_back(pts);
            norm_series.push_back(norm);
            if (d) {
                detail::PlotSeries curve{"fit N=" + std::to_string(n), {}, {}, {}, false};
                const double t_end = scans.back()->tau_ns * 1e-3;
                for (int k = 0; k <= 60; ++k) {
                    const double t = t_end * k / 60.0;
                    curve.x.push_back(t);
                    curve.y.push_back(d->c_init * std::exp(-t / d->t2n_us));
                }
                lin_series.push_back(curve);
            }
        }
        emit("coherence_vs_tau.csv", csv.str());
    }
    std::vector<detail::PlotSeries> parity_series;
    {
        std::ostringstream csv;
        csv << prefix << "n_qubits,tau_ns,phi_rad,parity,delta_p,fitted\n";
        for (std::size_t i = 0; i < datasets.size(); ++i) {
            const auto &ds = datasets[i];
            const auto &fit = report.scans[i].fit;
            for (const auto &p : ds.points) {
                csv << ds.n_qubits << "," << fmt17(ds.tau_ns) << "," << fmt17(p.phi) << "," << fmt17(p.parity) << ","
                    << fmt17(p.delta_p) << "," << fmt17(fit.evaluate(p.phi)) << "\n";
            }
            if (ds.tau_ns == 0.0) {
                detail::PlotSeries pts{"N=" + std::to_string(ds.n_qubits), {}, {}, {}, true};
                for (const auto &p : ds.points) {
                    pts.x.push_back(p.phi);
                    pts.y.push_back(p.parity);
                    pts.err.push_back(p.delta_p);
                }
                parity_series.push_back(pts);
                detail::PlotSeries curve{"fit N=" + std::to_string(ds.n_qubits), {}, {}, {}, false};
                for (int k = 0; k <= 200; ++k) {
                    const double phi = std::numbers::pi * k / 200.0;
                    curve.x.push_back(phi);
                    curve.y.push_back(fit.evaluate(phi));
                }
                parity_series.push_back(curve);
            }
        }
        emit("parity_curves.csv", csv.str());
    }

    if (options.svg) {
        const std::string tag = report.config_hash.empty() ? "" : "<!-- config_hash=" + report.config_hash + " -->\n";
        emit("coherence_vs_tau.svg", tag + detail::render_svg("Coherence decay", "delay (us)", "C(N, tau)", lin_series));
        emit("coherence_vs_tau_log.svg",
             tag + detail::render_svg("Coherence decay", "delay (us)", "C(N, tau)", lin_series, true));
        emit("coherence_normalized.svg",
             tag + detail::render_svg("Normalized coherence", "delay (us)", "C(N, tau) / C(N, 0)", norm_series));
        if (!parity_series.empty()) {
            emit("parity_tau0.svg", tag + detail::render_svg("Parity oscillations, zero delay", "phi (rad)", "parity",
                                                             parity_series));
        }
        if (!report.ratios.empty()) {
            detail::PlotSeries pts{"T2(1)/T2(N)", {}, {}, {}, true};
            for (const auto &r : report.ratios) {
                pts.x.push_back(r.n_qubits);
                pts.y.push_back(r.ratio);
                pts.err.push_back(r.sigma);
            }
            std::vector<detail::PlotSeries> series{pts};
            if (report.scaling_unweighted) {
                for (const auto &f : *report.scaling_unweighted) {
                    detail::PlotSeries curve{std::string(scaling_model_name(f.model)), {}, {}, {}, false};
                    for (int k = 0; k <= 50; ++k) {
                        const double n = 1.0 + (report.ratios.back().n_qubits - 1.0) * k / 50.0;
                        const double a = f.coefficients[0].value;
                        const double b = f.coefficients[1].value;
                        double v = 0.0;
                        switch (f.model) {
                            case ScalingModel::Linear:
                                v = a * n + b;
                                break;
                            case ScalingModel::QuadraticNoLinear:
                                v = a * n * n + b;
                                break;
                            case ScalingModel::QuadraticNoConstant:
                                v = a * n + b * n * n;
                                break;
                        }
                        curve.x.push_back(n);
                        curve.y.push_back(v);
                    }
                    series.push_back(curve);
                }
            }
            emit("scaling.svg", tag + detail::render_svg("Decoherence rate scaling", "N", "T2(1)/T2(N)", series));
        }
    }

    json doc;
    doc["config_hash"] = report.config_hash;
    json scans_j = json::array();
    for (const auto &s : report.scans) {
        scans_j.push_back({{"n_qubits", s.n_qubits},
                           {"tau_ns", s.tau_ns},
                           {"amplitude", s.fit.amplitude},
                           {"amplitude_se", s.fit.amplitude_se},
                           {"phase", s.fit.phase},
                           {"phase_se", s.fit.phase_se},
                           {"offset", s.fit.offset},
                           {"weighted", s.fit.weighted}});
    }
    doc["parity_fits"] = scans_j;
    json decays_j = json::array();
    for (const auto &[n, d] : report.decays) {
        decays_j.push_back({{"n_qubits", n},
                            {"c_init", d.c_init},
                            {"c_init_se", d.c_init_se},
                            {"t2n_us", d.t2n_us},
                            {"t2n_se_us", d.t2n_se_us},
                            {"weighted", d.weighted}});
    }
    doc["decay_fits"] = decays_j;
    json ratios_j = json::array();
    for (const auto &r : report.ratios) ratios_j.push_back({{"n_qubits", r.n_qubits}, {"ratio", r.ratio}, {"sigma", r.sigma}});
    doc["ratios"] = ratios_j;
    if (report.scaling_unweighted) {
        json arr = json::array();
        for (const auto &f : *report.scaling_unweighted) arr.push_back(fit_json(f));
        doc["scaling_unweighted"] = arr;
    }
    if (report.scaling_weighted) {
        json arr = json::array();
        for (const auto &f : *report.scaling_weighted) arr.push_back(fit_json(f));
        doc["scaling_weighted"] = arr;
    }
    if (report.initial_coherence) {
        const auto &l = *report.initial_coherence;
        doc["initial_coherence"] = {{"intercept", l.intercept},
                                    {"slope", l.slope},
                                    {"intercept_se", l.intercept_se},
                                    {"slope_se", l.slope_se},
                                    {"r_squared", l.r_squared}};
    }
    doc["notes"] = report.notes;
    report.files.push_back((out_dir / "report.json").string());
    doc["files"] = report.files;
    write_file(out_dir / "report.json", doc.dump(2) + "\n");
    return report;
}

// ---------------------------------------------------------------- reproduce

namespace {

VariantComparison compare(const std::array<ScalingFit, 3> &fits, bool weighted) {
    const PublishedScaling pub;
    VariantComparison v;
    v.weighted = weighted;
    v.fits = fits;
    for (int i = 0; i < 3; ++i) {
        v.r_squared_delta[static_cast<std::size_t>(i)] = fits[static_cast<std::size_t>(i)].r_squared - pub.r_squared[static_cast<std::size_t>(i)];
    }
    auto push_ci = [&](const ScalingFit &f, const char *name, const std::array<double, 2> &ref) {
        const auto &c = f.coefficient(name);
        v.ci_delta.push_back(std::abs(c.ci_low - ref[0]));
        v.ci_delta.push_back(std::abs(c.ci_high - ref[1]));
    };
    push_ci(fits[0], "beta", pub.linear_beta_ci);
    push_ci(fits[1], "gamma", pub.quad_no_linear_gamma_ci);
    push_ci(fits[2], "beta", pub.quad_no_constant_beta_ci);
    push_ci(fits[2], "gamma", pub.quad_no_constant_gamma_ci);

    bool ok = true;
    for (double d : v.r_squared_delta) ok = ok && std::abs(d) <= 0.01;
    ok = ok && v.ci_delta[0] <= 0.05 && v.ci_delta[1] <= 0.05;
    v.within_tolerance = ok;
    v.total_deviation = 0.0;
    for (double d : v.r_squared_delta) v.total_deviation += std::abs(d);
    for (double d : v.ci_delta) v.total_deviation += d;
    return v;
}

std::string variant_text(const VariantComparison &v) {
    const PublishedScaling pub;
    std::ostringstream out;
    out << (v.weighted ? "weighted" : "unweighted") << " fits (computed | published | delta):\n";
    const char *labels[] = {"(i)   beta N + alpha     ", "(ii)  gamma N^2 + alpha  ", "(iii) gamma N^2 + beta N "};
    for (std::size_t i = 0; i < 3; ++i) {
        out << "  " << labels[i] << "R^2 " << fmt(v.fits[i].r_squared) << " | " << fmt(pub.r_squared[i], 3) << " | "
            << fmt(v.r_squared_delta[i], 4) << "\n";
    }
    auto ci_line = [&](const ScalingFit &f, const char *name, const std::array<double, 2> &ref, const char *label) {
        const auto &c = f.coefficient(name);
        out << "  " << label << " 99% CI [" << fmt(c.ci_low, 3) << ", " << fmt(c.ci_high, 3) << "] | [" << fmt(ref[0], 3)
            << ", " << fmt(ref[1], 3) << "] | (" << fmt(c.ci_low - ref[0], 3) << ", " << fmt(c.ci_high - ref[1], 3)
            << ")\n";
    };
    ci_line(v.fits[0], "beta", pub.linear_beta_ci, "(i)   beta ");
    ci_line(v.fits[1], "gamma", pub.quad_no_linear_gamma_ci, "(ii)  gamma");
    ci_line(v.fits[2], "beta", pub.quad_no_constant_beta_ci, "(iii) beta ");
    ci_line(v.fits[2], "gamma", pub.quad_no_constant_gamma_ci, "(iii) gamma");
    out << "  within tolerance (R^2 +-0.01, (i) beta CI +-0.05): " << (v.within_tolerance ? "yes" : "no")
        << "; total deviation " << fmt(v.total_deviation, 4) << "\n";
    return out.str();
}

}  // namespace

std::string ReproduceReport::text() const {
    std::ostringstream out;
    out << "hardware T2^(N) table and ratios r_N = T2^(1)/T2^(N):\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        out << "  N=" << table[i].n_qubits << "  T2 = " << fmt(table[i].t2_us, 2) << " +- " << fmt(table[i].sigma_us, 2)
            << " us  r = " << fmt(ratios[i].ratio) << " +- " << fmt(ratios[i].sigma) << "\n";
    }
    out << variant_text(unweighted);
    out << variant_text(weighted);
    out << "closer to the published statistics: " << (weighted_matches_better ? "weighted" : "unweighted") << "\n";
    if (!calibration.empty()) {
        out << "calibration-based T2^(N) (harmonic sum | published calculation):\n";
        for (const auto &row : calibration) {
            out << "  N=" << row.n_qubits << " " << join_labels(row.chain) << ": " << fmt(row.predicted_us, 2) << " | "
                << fmt(row.published_us, 2) << " us\n";
        }
    }
    return out.str();
}

ReproduceReport cmd_reproduce_paper(const std::optional<CalibrationFile> &calibration) {
    ReproduceReport r;
    r.table = reference_t2_table();
    r.ratios = propagate_ratios(r.table);
    r.unweighted = compare(fit_scaling(r.ratios, false), false);
    r.weighted = compare(fit_scaling(ratios_for_weighted_fit(r.table), true), true);
    r.weighted_matches_better = r.weighted.total_deviation < r.unweighted.total_deviation;
    if (calibration) {
        const auto t2 = calibration->t2_by_qubit();
        for (const auto &[n, published] : reference_calibration_t2_table()) {
            const QubitChain chain = make_chain(ibmqx5(), *reference_chain(n));
            r.calibration.push_back({n, chain.qubits, predict_t2n_from_calibration(t2, chain), published});
        }
    }
    return r;
}

}  // namespace ghzdeco
