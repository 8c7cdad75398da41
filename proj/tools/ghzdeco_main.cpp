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

// ghzdeco command-line tool: route, simulate, analyze, reproduce-paper.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ghzdeco/commands.hpp"
#include "ghzdeco/config.hpp"
#include "ghzdeco/error.hpp"

namespace {

using namespace ghzdeco;

// Exit code for command-line usage errors; library errors use exit_code().
constexpr int kUsageExit = 2;

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCategory::Io, "cannot write '" + path + "'");
    out << text;
}

struct Common {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::string mode;
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("-c,--config", c.config_path, "run configuration (JSON)");
    cmd->add_option("-o,--out", c.out_dir, "output directory");
    cmd->add_option("--seed", c.seed, "master RNG seed");
    cmd->add_option("-j,--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--mode", c.mode, "exact or sampled")->check(CLI::IsMember({"exact", "sampled"}));
}

RunConfig build_config(const Common &c) {
    RunConfig config = c.config_path.empty() ? RunConfig{} : load_run_config(c.config_path);
    if (!c.out_dir.empty()) config.output_dir = c.out_dir;
    if (c.seed) config.seed = *c.seed;
    if (c.workers) config.workers = *c.workers;
    if (!c.mode.empty()) config.mode = parse_mode(c.mode);
    return config;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"GHZ-state decoherence experiments on superconducting coupling graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "ghzdeco 0.1.0");

    Common route_c, sim_c, an_c, rep_c;

    auto *route = app.add_subcommand("route", "find a GHZ chain and print its preparation circuit");
    add_common(route, route_c);
    int route_n = 0;
    std::string graph_file;
    std::vector<int> explicit_chain;
    std::optional<int> anchor;
    bool route_qasm = false;
    route->add_option("-n,--n", route_n, "number of qubits")->required();
    route->add_option("--graph", graph_file, "coupling graph JSON (default: bundled ibmqx5)");
    route->add_option("--chain", explicit_chain, "explicit chain to evaluate")->delimiter(',');
    route->add_option("--anchor", anchor, "qubit the chain must start from");
    route->add_flag("--qasm", route_qasm, "also print the OpenQASM preparation circuit");

    auto *simulate = app.add_subcommand("simulate", "simulate parity scans and write datasets");
    add_common(simulate, sim_c);
    std::optional<long long> shots;
    simulate->add_option("--shots", shots, "shots per phase point (sampled mode)")->check(CLI::PositiveNumber);

    auto *analyze = app.add_subcommand("analyze", "fit datasets and write fit tables and figures");
    add_common(analyze, an_c);
    std::string in_dir;
    AnalyzeOptions an_opts;
    analyze->add_option("-i,--in", in_dir, "dataset directory (default: the config output directory)");
    analyze->add_flag("--force", an_opts.force, "accept datasets from different configs");
    analyze->add_flag("--svg", an_opts.svg, "write SVG figures");
    analyze->add_flag("--with-offset", an_opts.with_offset, "fit a constant offset in the parity model");

    auto *reproduce = app.add_subcommand("reproduce-paper", "scaling analysis of the reference hardware T2 table");
    add_common(reproduce, rep_c);
    std::string calibration_path;
    reproduce->add_option("--calibration", calibration_path, "calibration snapshot JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return kUsageExit;
    }

    try {
        if (route->parsed()) {
            CouplingGraph graph = graph_file.empty() ? ibmqx5() : load_graph_file(graph_file);
            if (graph_file.empty() && !route_c.config_path.empty()) graph = resolve_graph(build_config(route_c));
            const auto report = cmd_route(graph, route_n,
                                          explicit_chain.empty() ? std::nullopt : std::optional(explicit_chain), anchor);
            std::cout << report.text();
            if (route_qasm) std::cout << report.qasm;
            if (!route_c.out_dir.empty()) {
                std::filesystem::create_directories(route_c.out_dir);
                write_text(route_c.out_dir + "/ghz_N" + std::to_string(route_n) + ".qasm", report.qasm);
            }
        } else if (simulate->parsed()) {
            RunConfig config = build_config(sim_c);
            if (shots) config.shots = *shots;
            const auto result = cmd_simulate(config);
            std::cout << "config hash: " << result.config_hash << "\n";
            std::cout << "wrote " << result.dataset_files.size() << " datasets and " << result.manifest_path << "\n";
        } else if (analyze->parsed()) {
            if (in_dir.empty()) {
                if (an_c.config_path.empty()) throw Error(ErrorCategory::Validation, "analyze needs --in or --config");
                in_dir = build_config(an_c).output_dir;
            }
            an_opts.output_dir = an_c.out_dir;
            const auto report = cmd_analyze(in_dir, an_opts);
            std::cout << report.text();
        } else if (reproduce->parsed()) {
            std::optional<CalibrationFile> calibration;
            if (!calibration_path.empty()) calibration = load_calibration_file(calibration_path);
            const auto report = cmd_reproduce_paper(calibration);
            std::cout << report.text();
            if (!rep_c.out_dir.empty()) {
                std::filesystem::create_directories(rep_c.out_dir);
                write_text(rep_c.out_dir + "/reproduce.txt", report.text());
            }
        }
    } catch (const Error &e) {
        std::cerr << "error: " << category_name(e.category()) << ": " << e.what() << "\n";
        return exit_code(e.category());
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "error: " << category_name(ErrorCategory::Io) << ": " << e.what() << "\n";
        return exit_code(ErrorCategory::Io);
    } catch (const std::exception &e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
