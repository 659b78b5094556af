// Copyright 2026 The qprune Authors
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

// qprune command-line entry point.
//
// Exit codes: 0 success, 1 internal failure, 2 input error, 3 empty or
// infeasible result. Machine-readable output goes to stdout (or the --*-out
// files), diagnostics to stderr.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "qprune/bench.h"
#include "qprune/calibration.h"
#include "qprune/chainsim.h"
#include "qprune/device_graph.h"
#include "qprune/errors.h"
#include "qprune/format.h"
#include "qprune/pruner.h"

namespace {

using namespace qprune;

constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitEmpty = 3;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string &path, const std::string &content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << content;
}

struct DeviceFiles {
    std::string calibration;
    std::string coupling;

    void add_to(CLI::App *cmd) {
        cmd->add_option("calibration", calibration, "Calibration document (JSON)")->required();
        cmd->add_option("coupling", coupling, "Coupling map document (JSON)")->required();
    }

    DeviceGraph load() const {
        auto snap = parse_snapshot(read_file(calibration));
        auto map = parse_coupling_map(read_file(coupling));
        auto built = build_weighted_graph(map, snap);
        for (const auto &pair : built.unmatched_calibration) {
            std::cerr << "warning: calibration entry " << to_string(pair) << " is not in the coupling map\n";
        }
        return std::move(built.graph);
    }
};

struct PolicyFlags {
    std::string readout_max;
    std::string cnot_max;

    void add_to(CLI::App *cmd, bool required) {
        auto *r = cmd->add_option("--readout-max", readout_max, "Readout error ceiling, e.g. 0.02 or 2%");
        auto *c = cmd->add_option("--cnot-max", cnot_max, "CNOT error ceiling, e.g. 0.016 or 1.6%");
        if (required) {
            r->required();
            c->required();
        }
    }

    bool given() const { return !readout_max.empty() || !cnot_max.empty(); }

    ThresholdPolicy parse() const {
        if (readout_max.empty() || cnot_max.empty()) {
            throw InputError("both --readout-max and --cnot-max are required");
        }
        return {parse_probability(cnot_max), parse_probability(readout_max)};
    }
};

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Threshold-driven coupling-map pruning and CNOT-chain fidelity benchmarking"};
    app.require_subcommand(1);

    // prune
    DeviceFiles prune_files;
    PolicyFlags prune_policy;
    bool relabel = false;
    bool all_partitions = false;
    auto *prune_cmd = app.add_subcommand("prune", "Emit the largest threshold-compliant partition as JSON");
    prune_files.add_to(prune_cmd);
    prune_policy.add_to(prune_cmd, true);
    prune_cmd->add_flag("--relabel", relabel, "Renumber partition qubits to 0..size-1");
    prune_cmd->add_flag("--all-partitions", all_partitions, "Emit every partition, largest first");

    // sweep
    DeviceFiles sweep_files;
    std::string readout_grid;
    std::string cnot_grid;
    std::string sweep_out;
    size_t sweep_threads = 1;
    auto *sweep_cmd = app.add_subcommand("sweep", "Largest-partition size over a threshold grid (CSV)");
    sweep_files.add_to(sweep_cmd);
    sweep_cmd->add_option("--readout-grid", readout_grid, "Comma-separated readout ceilings")->required();
    sweep_cmd->add_option("--cnot-grid", cnot_grid, "Comma-separated CNOT ceilings")->required();
    sweep_cmd->add_option("--csv-out", sweep_out, "Output path (default stdout)");
    sweep_cmd->add_option("--threads", sweep_threads, "Worker threads, 0 = all cores");

    // bench
    DeviceFiles bench_files;
    PolicyFlags bench_policy;
    std::string lengths;
    size_t samples = 0;
    size_t trials = 0;
    bool baseline = false;
    uint64_t bench_seed = 0;
    std::string raw_out;
    std::string summary_out;
    size_t bench_threads = 1;
    auto *bench_cmd = app.add_subcommand("bench", "Random CNOT-chain fidelity experiment (CSV)");
    bench_files.add_to(bench_cmd);
    bench_policy.add_to(bench_cmd, false);
    bench_cmd->add_option("--lengths", lengths, "Comma-separated chain lengths (qubits)")->required();
    bench_cmd->add_option("--samples", samples, "Random chains per length")->required();
    bench_cmd->add_option("--trials", trials, "Monte Carlo trials per chain")->required();
    bench_cmd->add_flag("--baseline", baseline, "Use every non-faulty qubit, no thresholds");
    bench_cmd->add_option("--seed", bench_seed, "Random seed")->required();
    bench_cmd->add_option("--raw-out", raw_out, "Per-sample CSV path");
    bench_cmd->add_option("--summary-out", summary_out, "Summary CSV path (default stdout)");
    bench_cmd->add_option("--threads", bench_threads, "Worker threads, 0 = all cores");

    // delta
    std::string delta_baseline;
    std::string delta_method;
    auto *delta_cmd = app.add_subcommand("delta", "Join a baseline and a pruned summary CSV with delta mean");
    delta_cmd->add_option("baseline", delta_baseline, "Baseline summary CSV")->required();
    delta_cmd->add_option("method", delta_method, "Pruned summary CSV")->required();

    // drift
    std::string drift_spec;
    int days = 0;
    int per_day = 1;
    double drift_rate = 0.0;
    double jitter = 0.0;
    uint64_t drift_seed = 0;
    size_t window = 1;
    std::string drift_out;
    std::string series_out;
    auto *drift_cmd = app.add_subcommand("drift", "Synthesize an aging device and emit the smoothed CNOT error (CSV)");
    drift_cmd->add_option("--synth-spec-file", drift_spec, "Synthetic device spec (JSON)")->required();
    drift_cmd->add_option("--days", days, "Days covered")->required();
    drift_cmd->add_option("--per-day", per_day, "Snapshots per day");
    drift_cmd->add_option("--drift-rate", drift_rate, "Additive CNOT error increase per day");
    drift_cmd->add_option("--jitter", jitter, "Per-snapshot noise scale");
    drift_cmd->add_option("--seed", drift_seed, "Random seed")->required();
    drift_cmd->add_option("--window", window, "Moving-average window in snapshots");
    drift_cmd->add_option("--csv-out", drift_out, "Output path (default stdout)");
    drift_cmd->add_option("--series-out", series_out, "Also write the raw series as a JSON array");

    // synth
    std::string synth_spec;
    uint64_t synth_seed = 0;
    std::string calibration_out;
    std::string coupling_out;
    auto *synth_cmd = app.add_subcommand("synth", "Write a synthetic calibration and coupling map");
    synth_cmd->add_option("--synth-spec-file", synth_spec, "Synthetic device spec (JSON)")->required();
    synth_cmd->add_option("--seed", synth_seed, "Random seed")->required();
    synth_cmd->add_option("--calibration-out", calibration_out, "Calibration output path")->required();
    synth_cmd->add_option("--coupling-out", coupling_out, "Coupling map output path")->required();

    // chain
    DeviceFiles chain_files;
    std::string chain_path;
    size_t chain_trials = 0;
    uint64_t chain_seed = 0;
    auto *chain_cmd = app.add_subcommand("chain", "Estimate one chain's fidelity (JSON)");
    chain_files.add_to(chain_cmd);
    chain_cmd->add_option("--path", chain_path, "Comma-separated qubits in chain order")->required();
    chain_cmd->add_option("--trials", chain_trials, "Monte Carlo trials")->required();
    chain_cmd->add_option("--seed", chain_seed, "Random seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*prune_cmd) {
            DeviceGraph graph = prune_files.load();
            ThresholdPolicy policy = prune_policy.parse();
            if (all_partitions) {
                auto ps = partitions(prune(graph, policy));
                if (ps.empty()) {
                    throw EmptyResultError("empty partition: no qubit satisfies the thresholds");
                }
                write_output("", partitions_to_json(ps, policy, relabel));
            } else {
                write_output("", partition_to_json(largest_partition(graph, policy), policy, relabel));
            }
        } else if (*sweep_cmd) {
            DeviceGraph graph = sweep_files.load();
            auto rs = parse_probability_list(readout_grid);
            auto cs = parse_probability_list(cnot_grid);
            write_output(sweep_out, sweep_to_csv(sweep(graph, rs, cs, sweep_threads)));
        } else if (*bench_cmd) {
            if (baseline == bench_policy.given()) {
                throw InputError("pass either --baseline or both --readout-max and --cnot-max");
            }
            DeviceGraph graph = bench_files.load();
            ExperimentConfig cfg;
            cfg.chain_lengths = parse_size_list(lengths);
            cfg.samples_per_length = samples;
            cfg.trials_per_chain = trials;
            if (!baseline) {
                cfg.policy = bench_policy.parse();
            }
            cfg.seed = bench_seed;
            cfg.threads = bench_threads;
            ExperimentResult result = run_experiment(graph, cfg);
            for (const auto &s : result.samples) {
                if (!s.path) {
                    std::cerr << "length " << s.length << " sample " << s.sample_index << ": " << s.failure << "\n";
                }
            }
            if (!raw_out.empty()) {
                write_output(raw_out, samples_to_csv(result));
            }
            auto summary = summarize(result);
            write_output(summary_out, summary_to_csv(summary, baseline ? "baseline" : "pruned"));
        } else if (*delta_cmd) {
            auto base = parse_summary_csv(read_file(delta_baseline));
            auto method = parse_summary_csv(read_file(delta_method));
            write_output("", summary_to_csv(method.rows, method.mode.empty() ? "pruned" : method.mode, base.rows));
        } else if (*drift_cmd) {
            SynthSpec spec = parse_synth_spec(read_file(drift_spec));
            DriftSeries series = synth_drift_series(spec, days, per_day, drift_rate, jitter, drift_seed);
            if (!series_out.empty()) {
                write_output(series_out, serialize_drift_series(series));
            }
            write_output(drift_out, smoothed_to_csv(smooth_series(series, window)));
        } else if (*synth_cmd) {
            SynthSpec spec = parse_synth_spec(read_file(synth_spec));
            write_output(calibration_out, serialize_snapshot(synth_snapshot(spec, synth_seed)));
            write_output(coupling_out, serialize_coupling_map(synth_coupling_map(spec.topology, spec.num_qubits)));
        } else if (*chain_cmd) {
            DeviceGraph graph = chain_files.load();
            ChainPath path;
            for (size_t q : parse_size_list(chain_path)) {
                path.qubits.push_back(static_cast<Qubit>(q));
            }
            if (path.qubits.size() < 2) {
                throw InputError("a chain needs at least two qubits");
            }
            for (size_t i = 0; i + 1 < path.qubits.size(); i++) {
                DirectedPair step{path.qubits[i], path.qubits[i + 1]};
                if (!graph.edge_weight.contains(step) && !graph.edge_weight.contains(step.reversed())) {
                    throw InputError("qubits " + to_string(step) + " are not coupled");
                }
            }
            auto estimate = mc_chain_process_fidelity(chain_gate_errors(path, graph), chain_trials, chain_seed);
            write_output("", chain_result_to_json(path, estimate));
        }
    } catch (const InputError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const EmptyResultError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmpty;
    } catch (const InfeasibleError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEmpty;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return 0;
}
