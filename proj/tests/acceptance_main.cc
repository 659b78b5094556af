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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Each criterion also has a wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "qprune/bench.h"
#include "qprune/calibration.h"
#include "qprune/chainsim.h"
#include "qprune/device_graph.h"
#include "qprune/errors.h"
#include "qprune/pauli.h"
#include "qprune/pruner.h"

using namespace qprune;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_s;
    std::function<Verdict()> check;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), format, args...);
    return buf;
}

double percentile(std::vector<double> values, double q) {
    std::sort(values.begin(), values.end());
    double pos = q * static_cast<double>(values.size() - 1);
    auto lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

DeviceGraph device_of(const SynthSpec &spec, const CalibrationSnapshot &snap) {
    return build_weighted_graph(synth_coupling_map(spec.topology, spec.num_qubits), snap).graph;
}

// 1 ------------------------------------------------------------------------
Verdict formula_exactness() {
    double worst = 0.0;
    for (int i = 0; i < 1000; i++) {
        double fp = i / 999.0;
        worst = std::max(worst, std::abs(process_to_gate_fidelity(fp) - (4.0 * fp + 1.0) / 5.0));
    }
    return {worst <= 1e-12, fmt("max |F_gate - (4F+1)/5| = %.3g over 1000 points", worst)};
}

// 2 ------------------------------------------------------------------------
Verdict delta_mean_convention() {
    struct Row {
        int length;
        double baseline;
        double method;
        double published;
    };
    const Row rows[] = {
        {10, 0.635, 0.719, 11.8}, {20, 0.423, 0.646, 34.5}, {30, 0.333, 0.581, 42.6},
        {40, 0.298, 0.569, 47.7}, {50, 0.263, 0.549, 52.0},
    };
    bool pass = true;
    std::string detail;
    for (const auto &r : rows) {
        double d = delta_mean(r.baseline, r.method);
        bool ok = std::abs(d - r.published) <= 0.1;
        pass &= ok;
        detail += fmt("%sL%d: %.2f%% vs %.1f%%%s", detail.empty() ? "" : "; ", r.length, d, r.published,
                      ok ? "" : " (off by more than 0.1)");
    }
    return {pass, detail};
}

// 3 ------------------------------------------------------------------------
Verdict pruning_oracle_equivalence() {
    std::mt19937_64 rng(20240130);
    std::uniform_real_distribution<double> threshold(0.0, 0.1);
    int matches = 0;
    int empty = 0;
    for (int i = 0; i < 500; i++) {
        auto g = oracle::random_device(rng, 1 + rng() % 12);
        double r = threshold(rng);
        double c = threshold(rng);
        auto expected = oracle::largest(g, r, c);
        std::optional<Partition> got;
        try {
            got = largest_partition(g, {c, r});
        } catch (const EmptyResultError &) {
        }
        if (!expected || !got) {
            matches += !expected && !got;
            empty += !expected && !got;
            continue;
        }
        matches += std::set<Qubit>(got->qubits.begin(), got->qubits.end()) == expected->qubits &&
                   std::set<DirectedPair>(got->edges.begin(), got->edges.end()) == expected->edges;
    }
    return {matches == 500, fmt("%d/500 identical (qubits and edges), %d of them empty on both sides", matches, empty)};
}

// 4 ------------------------------------------------------------------------
Verdict threshold_monotonicity() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Topology topologies[] = {Topology::HeavyHex, Topology::Grid, Topology::Line, Topology::Ring};
    int violations = 0;
    size_t evaluated = 0;
    for (int device = 0; device < 100; device++) {
        SynthSpec spec{20 + rng() % 108, topologies[rng() % 4], 0.02, 0.2 + unit(rng), 0.009, 0.2 + unit(rng),
                       0.1 * unit(rng)};
        auto snap = synth_snapshot(spec, rng());
        // Leave a few entries uncalibrated.
        for (auto it = snap.cnot_error.begin(); it != snap.cnot_error.end();) {
            it = unit(rng) < 0.02 ? snap.cnot_error.erase(it) : std::next(it);
        }
        auto g = device_of(spec, snap);
        std::vector<double> readout_grid(10);
        std::vector<double> cnot_grid(10);
        for (int k = 0; k < 10; k++) {
            readout_grid[k] = 0.2 * std::pow(0.7, k);
            cnot_grid[k] = 0.03 * std::pow(0.75, k);
        }
        auto rows = sweep(g, readout_grid, cnot_grid);
        evaluated += rows.size();
        for (size_t r = 0; r < 10; r++) {
            for (size_t c = 0; c < 10; c++) {
                size_t here = rows[r * 10 + c].largest_partition_size;
                if (c > 0 && here > rows[r * 10 + c - 1].largest_partition_size) {
                    violations++;
                }
                if (r > 0 && here > rows[(r - 1) * 10 + c].largest_partition_size) {
                    violations++;
                }
            }
        }
    }
    return {violations == 0, fmt("%zu grid points on 100 devices, %d monotonicity violations", evaluated, violations)};
}

// 5 ------------------------------------------------------------------------
Verdict simulator_oracle() {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> err(0.0, 0.05);
    int within = 0;
    double worst_z = 0.0;
    for (int c = 0; c < 200; c++) {
        std::vector<double> errors(1 + rng() % 4);
        for (double &e : errors) {
            e = err(rng);
        }
        double exact = oracle::enumerate_chain_fidelity(errors);
        auto est = mc_chain_process_fidelity(errors, 100000, rng());
        double z = est.std_error > 0 ? std::abs(est.process_fidelity - exact) / est.std_error
                                     : (est.process_fidelity == exact ? 0.0 : INFINITY);
        worst_z = std::max(worst_z, z);
        within += z <= 3.0;
    }
    return {within >= 195, fmt("%d/200 within 3 SE (need >= 195), worst |z| = %.2f", within, worst_z)};
}

// 6 ------------------------------------------------------------------------
Verdict conjugation_correctness() {
    auto table = oracle::cnot_conjugation_table();
    int agree = 0;
    for (int k = 0; k < 16; k++) {
        std::string in{oracle::letter_char(k / 4), oracle::letter_char(k % 4)};
        std::string want{oracle::letter_char(table[k] / 4), oracle::letter_char(table[k] % 4)};
        agree += pauli_conjugate_cnot(PauliString::from_letters(in), 0, 1).str() == want;
    }
    return {agree == 16, fmt("%d/16 two-qubit Paulis agree with 4x4 matrix conjugation", agree)};
}

// 7 ------------------------------------------------------------------------
Verdict qualitative_table() {
    SynthSpec spec{127, Topology::HeavyHex, 0.02, std::log(2.0), 0.009, std::log(2.0), 0.0};
    auto snap = synth_snapshot(spec, 2024);
    auto g = device_of(spec, snap);
    std::vector<double> readouts;
    for (const auto &[q, e] : snap.readout_error) {
        readouts.push_back(e);
    }
    std::vector<double> cnots;
    for (const auto &[pair, e] : snap.cnot_error) {
        cnots.push_back(e);
    }
    ThresholdPolicy policy{percentile(cnots, 0.30), percentile(readouts, 0.30)};
    ExperimentConfig cfg{{10, 20, 30, 40, 50}, 30, 2000, std::nullopt, 7, 0};

    auto base = summarize(run_experiment(g, cfg));
    std::string detail = fmt("thresholds readout %.4f cnot %.4f; baseline", policy.readout_error_max, policy.cnot_error_max);
    for (const auto &row : base) {
        detail += fmt(" L%zu=%.3f", row.length, row.mean);
    }
    detail += "; ";
    cfg.policy = policy;
    std::vector<LengthSummary> method;
    try {
        method = summarize(run_experiment(g, cfg));
    } catch (const InfeasibleError &e) {
        return {false, detail + "pruned run infeasible: " + e.what()};
    } catch (const EmptyResultError &e) {
        return {false, detail + "pruned run empty: " + e.what()};
    }
    bool pass = true;
    std::vector<double> deltas;
    for (size_t i = 0; i < base.size(); i++) {
        bool better = method[i].n > 0 && base[i].n > 0 && method[i].mean > base[i].mean;
        pass &= better;
        deltas.push_back(method[i].n > 0 ? delta_mean(base[i].mean, method[i].mean) : NAN);
        detail += fmt("L%zu %.3f->%.3f; ", base[i].length, base[i].mean, method[i].mean);
    }
    pass &= deltas.back() > deltas.front();
    detail += fmt("delta L10 %.1f%%, L50 %.1f%%", deltas.front(), deltas.back());
    return {pass, detail};
}

// 8 ------------------------------------------------------------------------
Verdict determinism() {
    int identical = 0;
    int total = 0;
    auto same = [&](const std::string &a, const std::string &b) {
        total++;
        identical += a == b;
    };
    SynthSpec spec{127, Topology::HeavyHex, 0.02, 0.7, 0.009, 0.7, 0.02};
    same(serialize_snapshot(synth_snapshot(spec, 31)), serialize_snapshot(synth_snapshot(spec, 31)));

    auto series_a = synth_drift_series(spec, 30, 4, 1e-5, 1e-4, 32);
    auto series_b = synth_drift_series(spec, 30, 4, 1e-5, 1e-4, 32);
    same(serialize_drift_series(series_a), serialize_drift_series(series_b));
    same(smoothed_to_csv(smooth_series(series_a, 9)), smoothed_to_csv(smooth_series(series_b, 9)));

    auto g = device_of(spec, synth_snapshot(spec, 31));
    std::vector<double> rs{0.216, 0.1, 0.05, 0.02, 0.01};
    std::vector<double> cs{0.016, 0.012, 0.009, 0.006, 0.003};
    same(sweep_to_csv(sweep(g, rs, cs, 1)), sweep_to_csv(sweep(g, rs, cs, 4)));

    ThresholdPolicy policy{0.02, 0.1};
    same(partitions_to_json(partitions(prune(g, policy)), policy, true),
         partitions_to_json(partitions(prune(g, policy)), policy, true));

    for (auto mode : {std::optional<ThresholdPolicy>{}, std::optional<ThresholdPolicy>{policy}}) {
        ExperimentConfig cfg{{5, 10, 15}, 8, 1500, mode, 33, 1};
        auto a = run_experiment(g, cfg);
        cfg.threads = 4;
        auto b = run_experiment(g, cfg);
        same(samples_to_csv(a), samples_to_csv(b));
        same(summary_to_csv(summarize(a), "m"), summary_to_csv(summarize(b), "m"));
    }

    ChainPath path = random_chain_path(largest_partition(g, {1.0, 1.0}), 25, 34);
    auto errors = chain_gate_errors(path, g);
    same(chain_result_to_json(path, mc_chain_process_fidelity(errors, 30000, 35, 1)),
         chain_result_to_json(path, mc_chain_process_fidelity(errors, 30000, 35, 4)));
    return {identical == total, fmt("%d/%d pipeline outputs byte-identical (including 1 vs 4 threads)", identical, total)};
}

// 9 ------------------------------------------------------------------------

/// OLS slope on the smoothed series. A centered moving average of width w
/// correlates residuals up to lag w-1, so the slope's standard error uses
/// Newey-West weights over that many lags.
struct SlopeFit {
    double slope;
    double std_error;
};

SlopeFit smoothed_slope(const std::vector<SmoothedPoint> &points, size_t window) {
    std::vector<double> t;
    std::vector<double> y;
    for (const auto &p : points) {
        t.push_back(static_cast<double>(p.timestamp_unix_s - points.front().timestamp_unix_s) / 86400.0);
        y.push_back(p.mean_cnot_error);
    }
    auto fit = oracle::fit_line(t, y);
    size_t n = t.size();
    double mt = 0.0;
    for (double v : t) {
        mt += v;
    }
    mt /= static_cast<double>(n);
    std::vector<double> score(n);
    double sxx = 0.0;
    for (size_t i = 0; i < n; i++) {
        double resid = y[i] - fit.intercept - fit.slope * t[i];
        score[i] = (t[i] - mt) * resid;
        sxx += (t[i] - mt) * (t[i] - mt);
    }
    size_t lags = window - 1;
    double s = 0.0;
    for (size_t i = 0; i < n; i++) {
        s += score[i] * score[i];
    }
    for (size_t l = 1; l <= lags; l++) {
        double w = 1.0 - static_cast<double>(l) / static_cast<double>(lags + 1);
        double acc = 0.0;
        for (size_t i = l; i < n; i++) {
            acc += score[i] * score[i - l];
        }
        s += 2.0 * w * acc;
    }
    double hac = std::sqrt(s) / sxx * std::sqrt(static_cast<double>(n) / static_cast<double>(n - 2));
    return {fit.slope, std::max(hac, fit.slope_std_error)};
}

Verdict drift_analysis() {
    SynthSpec spec{127, Topology::HeavyHex, 0.02, 0.7, 0.009, 0.7, 0.0};
    const size_t window = 7;
    auto drifting = smooth_series(synth_drift_series(spec, 200, 1, 1e-5, 2e-4, 91), window);
    auto flat = smooth_series(synth_drift_series(spec, 200, 1, 0.0, 2e-4, 92), window);
    auto d = smoothed_slope(drifting, window);
    auto f = smoothed_slope(flat, window);
    bool drift_ok = d.slope > 0.0 && std::abs(d.slope - 1e-5) <= 3 * d.std_error;
    bool flat_ok = std::abs(f.slope) <= 3 * f.std_error;
    return {drift_ok && flat_ok, fmt("drift slope %.3e +/- %.1e (true 1e-5); zero-drift slope %.2e +/- %.1e", d.slope,
                                     d.std_error, f.slope, f.std_error)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "formula exactness", 1.0, formula_exactness},
        {2, "delta-mean convention", 1.0, delta_mean_convention},
        {3, "pruning oracle equivalence", 10.0, pruning_oracle_equivalence},
        {4, "threshold monotonicity", 10.0, threshold_monotonicity},
        {5, "simulator oracle", 60.0, simulator_oracle},
        {6, "conjugation correctness", 1.0, conjugation_correctness},
        {7, "qualitative table reproduction", 300.0, qualitative_table},
        {8, "determinism", 120.0, determinism},
        {9, "drift analysis", 5.0, drift_analysis},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = elapsed <= c.budget_s;
        bool pass = v.pass && in_time;
        failed += !pass;
        std::printf("[%s] %d. %s (%.2fs / %.0fs budget%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(), elapsed,
                    c.budget_s, in_time ? "" : ", OVER BUDGET", v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
