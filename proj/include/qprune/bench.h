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

#ifndef QPRUNE_BENCH_H
#define QPRUNE_BENCH_H

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qprune/chainsim.h"
#include "qprune/device_graph.h"
#include "qprune/pruner.h"

namespace qprune {

struct ExperimentConfig {
    std::vector<size_t> chain_lengths;
    size_t samples_per_length = 1;
    size_t trials_per_chain = 1;
    /// Empty means baseline: every non-faulty qubit, no thresholds.
    std::optional<ThresholdPolicy> policy;
    uint64_t seed = 0;
    size_t threads = 1;

    bool is_baseline() const { return !policy.has_value(); }
    void validate() const;
};

struct ChainSample {
    size_t length = 0;
    size_t sample_index = 0;
    /// Empty when no path could be generated; such samples do not count towards N.
    std::optional<ChainPath> path;
    FidelityEstimate estimate;
    std::string failure;
};

struct LengthSummary {
    size_t length = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    size_t n = 0;
};

struct ExperimentResult {
    bool baseline = true;
    std::vector<ChainSample> samples;  // ordered by (length, sample_index)
};

/// Samples random chains on the reference device (baseline) or on the largest
/// partition under cfg.policy and estimates each chain's gate fidelity.
///
/// Throws EmptyResultError if the policy leaves nothing, and InfeasibleError if
/// a requested length exceeds the partition size. Walks that exhaust their
/// restart budget are recorded as failed samples instead. Every sample draws
/// from seeds derived from (cfg.seed, length, sample index), so the result is
/// independent of cfg.threads.
ExperimentResult run_experiment(const DeviceGraph &graph, const ExperimentConfig &cfg);

/// Per-length mean, sample std. dev. (N - 1 denominator, 0 when N = 1) and N
/// over successful samples. Lengths without a single successful sample are
/// reported with N = 0 and NaN statistics. Throws InputError on an empty result.
std::vector<LengthSummary> summarize(const ExperimentResult &result);

/// 100 * (method - baseline) / method. Throws InputError if method_mean <= 0.
double delta_mean(double baseline_mean, double method_mean);

std::string samples_to_csv(const ExperimentResult &result);

/// Summary CSV for one or two modes. When both are given, rows for matching
/// lengths carry delta_mean_pct on the method rows.
std::string summary_to_csv(std::span<const LengthSummary> rows, std::string_view mode,
                           std::span<const LengthSummary> baseline_rows = {});

struct SummaryTable {
    std::string mode;
    std::vector<LengthSummary> rows;
};

/// Reads back single-mode summary CSV as written by summary_to_csv.
SummaryTable parse_summary_csv(std::string_view text);

}  // namespace qprune

#endif
