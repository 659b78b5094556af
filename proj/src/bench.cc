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

#include "qprune/bench.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "qprune/errors.h"
#include "qprune/format.h"
#include "qprune/parallel.h"
#include "qprune/random.h"

namespace qprune {

namespace {

enum SampleStream : uint64_t { kPathStream = 0, kTrialStream = 1 };

std::string summary_row(const LengthSummary &s, std::string_view mode, const std::string &delta) {
    return std::to_string(s.length) + "," + std::string(mode) + "," + format_real(s.mean) + "," +
           format_real(s.std_dev) + "," + std::to_string(s.n) + "," + delta + "\n";
}

std::vector<std::string> split_row(const std::string &line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (chain_lengths.empty()) {
        throw InputError("at least one chain length is required");
    }
    for (size_t len : chain_lengths) {
        if (len < 2) {
            throw InputError("chain lengths must be at least 2");
        }
    }
    if (samples_per_length < 1 || trials_per_chain < 1) {
        throw InputError("samples and trials must be at least 1");
    }
    if (policy) {
        policy->validate();
    }
}

ExperimentResult run_experiment(const DeviceGraph &graph, const ExperimentConfig &cfg) {
    cfg.validate();
    Partition region;
    if (cfg.policy) {
        region = largest_partition(graph, *cfg.policy);
    } else {
        auto ps = partitions(prune_faulty_only(graph));
        if (ps.empty()) {
            throw EmptyResultError("empty partition: every qubit is faulty");
        }
        region = std::move(ps.front());
    }
    for (size_t len : cfg.chain_lengths) {
        if (len > region.size()) {
            throw InfeasibleError("partition too small: " + std::to_string(region.size()) +
                                  " qubits cannot host a chain of " + std::to_string(len));
        }
    }

    ExperimentResult result;
    result.baseline = cfg.is_baseline();
    result.samples.resize(cfg.chain_lengths.size() * cfg.samples_per_length);
    parallel_for(result.samples.size(), cfg.threads, [&](size_t i) {
        ChainSample &sample = result.samples[i];
        sample.length = cfg.chain_lengths[i / cfg.samples_per_length];
        sample.sample_index = i % cfg.samples_per_length;
        uint64_t sample_seed = derive_seed(cfg.seed, sample.length, sample.sample_index);
        try {
            sample.path = random_chain_path(region, sample.length, derive_seed(sample_seed, kPathStream));
        } catch (const PathNotFoundError &e) {
            sample.failure = e.what();
            return;
        }
        sample.estimate = mc_chain_process_fidelity(chain_gate_errors(*sample.path, graph), cfg.trials_per_chain,
                                                    derive_seed(sample_seed, kTrialStream));
    });
    return result;
}

std::vector<LengthSummary> summarize(const ExperimentResult &result) {
    if (result.samples.empty()) {
        throw InputError("cannot summarize an empty result");
    }
    std::vector<LengthSummary> out;
    std::vector<std::vector<double>> values;
    for (const auto &s : result.samples) {
        if (out.empty() || out.back().length != s.length) {
            out.push_back({s.length, 0.0, 0.0, 0});
            values.emplace_back();
        }
        if (s.path) {
            values.back().push_back(s.estimate.gate_fidelity);
        }
    }
    for (size_t i = 0; i < out.size(); i++) {
        const auto &v = values[i];
        out[i].n = v.size();
        if (v.empty()) {
            out[i].mean = out[i].std_dev = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        double mean = 0.0;
        for (double x : v) {
            mean += x;
        }
        mean /= static_cast<double>(v.size());
        double ss = 0.0;
        for (double x : v) {
            ss += (x - mean) * (x - mean);
        }
        out[i].mean = mean;
        out[i].std_dev = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    }
    return out;
}

double delta_mean(double baseline_mean, double method_mean) {
    if (!(method_mean > 0.0)) {
        throw InputError("method mean must be positive");
    }
    return 100.0 * (method_mean - baseline_mean) / method_mean;
}

std::string samples_to_csv(const ExperimentResult &result) {
    std::string out = "length,sample_index,path,gate_fidelity,std_error\n";
    for (const auto &s : result.samples) {
        out += std::to_string(s.length) + "," + std::to_string(s.sample_index) + ",";
        if (s.path) {
            // The error column is for gate fidelity: 4/5 of the process-fidelity error.
            out += path_to_string(*s.path) + "," + format_real(s.estimate.gate_fidelity) + "," +
                   format_real(0.8 * s.estimate.std_error);
        } else {
            out += ",,";
        }
        out += "\n";
    }
    return out;
}

std::string summary_to_csv(std::span<const LengthSummary> rows, std::string_view mode,
                           std::span<const LengthSummary> baseline_rows) {
    std::string out = "length,mode,mean,std_dev,n,delta_mean_pct\n";
    for (const auto &b : baseline_rows) {
        out += summary_row(b, "baseline", "");
    }
    for (const auto &r : rows) {
        std::string delta;
        for (const auto &b : baseline_rows) {
            if (b.length == r.length && b.n > 0 && r.n > 0 && r.mean > 0.0) {
                delta = format_real(delta_mean(b.mean, r.mean));
            }
        }
        out += summary_row(r, mode, delta);
    }
    return out;
}

SummaryTable parse_summary_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line.rfind("length,mode,mean,std_dev,n", 0) != 0) {
        throw InputError("summary CSV must start with the header 'length,mode,mean,std_dev,n,delta_mean_pct'");
    }
    SummaryTable table;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split_row(line);
        if (cells.size() < 5) {
            throw InputError("malformed summary row: '" + line + "'");
        }
        if (table.mode.empty()) {
            table.mode = cells[1];
        } else if (table.mode != cells[1]) {
            throw InputError("summary CSV mixes modes '" + table.mode + "' and '" + cells[1] + "'");
        }
        try {
            table.rows.push_back({std::stoul(cells[0]), std::stod(cells[2]), std::stod(cells[3]), std::stoul(cells[4])});
        } catch (const std::exception &) {
            throw InputError("malformed summary row: '" + line + "'");
        }
    }
    return table;
}

}  // namespace qprune
