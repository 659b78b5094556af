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

#include <algorithm>
#include <cmath>
#include <set>

#include "gtest/gtest.h"
#include "oracles.h"
#include "qprune/calibration.h"
#include "qprune/errors.h"

using namespace qprune;

namespace {

SynthSpec make_spec(size_t n, Topology topology = Topology::HeavyHex) {
    SynthSpec spec;
    spec.num_qubits = n;
    spec.topology = topology;
    spec.readout_median = 0.02;
    spec.readout_dispersion = 0.7;
    spec.cnot_median = 0.009;
    spec.cnot_dispersion = 0.7;
    spec.faulty_fraction = 0.0;
    return spec;
}

std::vector<double> snapshot_means(const DriftSeries &series) {
    std::vector<double> out;
    for (const auto &s : series.snapshots) {
        out.push_back(s.mean_cnot_error());
    }
    return out;
}

bool connected(size_t n, const std::vector<std::pair<Qubit, Qubit>> &pairs) {
    std::set<Qubit> reached{0};
    bool grew = true;
    while (grew) {
        grew = false;
        for (auto [a, b] : pairs) {
            if (reached.count(a) != reached.count(b)) {
                reached.insert(a);
                reached.insert(b);
                grew = true;
            }
        }
    }
    return reached.size() == n;
}

}  // namespace

TEST(synth, topologies_are_connected_and_sparse) {
    auto hh = topology_pairs(Topology::HeavyHex, 127);
    EXPECT_TRUE(connected(127, hh));
    EXPECT_EQ(hh.size(), 144u);
    std::vector<int> degree(127);
    for (auto [a, b] : hh) {
        ASSERT_LT(a, b);
        degree[a]++;
        degree[b]++;
    }
    EXPECT_LE(*std::max_element(degree.begin(), degree.end()), 3);

    EXPECT_EQ(topology_pairs(Topology::Line, 5).size(), 4u);
    EXPECT_EQ(topology_pairs(Topology::Ring, 5).size(), 5u);
    EXPECT_EQ(topology_pairs(Topology::Grid, 9).size(), 12u);
    for (auto topology : {Topology::HeavyHex, Topology::Grid, Topology::Line, Topology::Ring}) {
        for (size_t n : {1, 2, 7, 20, 40}) {
            EXPECT_TRUE(connected(n, topology_pairs(topology, n))) << to_string(topology) << " " << n;
        }
    }
}

TEST(synth, degenerate_dispersion_gives_median) {
    auto spec = make_spec(30);
    spec.readout_dispersion = 1e-12;
    spec.cnot_dispersion = 1e-12;
    auto snap = synth_snapshot(spec, 3);
    for (const auto &[q, e] : snap.readout_error) {
        EXPECT_NEAR(e, 0.02, 1e-9);
    }
    for (const auto &[pair, e] : snap.cnot_error) {
        EXPECT_NEAR(e, 0.009, 1e-9);
    }
}

TEST(synth, deterministic_under_seed) {
    auto spec = make_spec(127);
    spec.faulty_fraction = 0.05;
    EXPECT_EQ(serialize_snapshot(synth_snapshot(spec, 42)), serialize_snapshot(synth_snapshot(spec, 42)));
    EXPECT_NE(synth_snapshot(spec, 42), synth_snapshot(spec, 43));
}

TEST(synth, faulty_count_is_floor_of_fraction) {
    auto spec = make_spec(20, Topology::Grid);
    spec.faulty_fraction = 0.1;
    for (uint64_t seed = 0; seed < 20; seed++) {
        EXPECT_EQ(synth_snapshot(spec, seed).faulty_qubits.size(), 2u);
    }
    spec.faulty_fraction = 0.0;
    EXPECT_TRUE(synth_snapshot(spec, 0).faulty_qubits.empty());
}

TEST(synth, log_normal_median_is_recovered) {
    auto spec = make_spec(2000, Topology::Line);
    auto snap = synth_snapshot(spec, 9);
    std::vector<double> logs;
    for (const auto &[q, e] : snap.readout_error) {
        logs.push_back(std::log(e));
    }
    std::sort(logs.begin(), logs.end());
    // Median of 2000 draws; its standard error is about 1.25 * 0.7 / sqrt(2000) = 0.02.
    EXPECT_NEAR(std::exp(logs[logs.size() / 2]), 0.02, 0.02 * 0.1);
}

TEST(synth, rejects_invalid_spec) {
    auto spec = make_spec(10);
    spec.cnot_median = 0.0;
    EXPECT_THROW(synth_snapshot(spec, 0), InputError);
    spec = make_spec(10);
    spec.readout_dispersion = 0.0;
    EXPECT_THROW(synth_snapshot(spec, 0), InputError);
    spec = make_spec(10);
    spec.faulty_fraction = 1.0;
    EXPECT_THROW(synth_snapshot(spec, 0), InputError);
    EXPECT_THROW(parse_synth_spec(R"({"num_qubits": 5})"), InputError);
    EXPECT_THROW(parse_topology("torus"), InputError);
}

TEST(synth, spec_round_trip) {
    auto spec = make_spec(27, Topology::Ring);
    spec.faulty_fraction = 0.25;
    auto back = parse_synth_spec(serialize_synth_spec(spec));
    EXPECT_EQ(serialize_synth_spec(back), serialize_synth_spec(spec));
}

TEST(drift, no_drift_no_jitter_is_flat) {
    auto series = synth_drift_series(make_spec(27), 30, 2, 0.0, 0.0, 5);
    auto means = snapshot_means(series);
    ASSERT_EQ(means.size(), 61u);
    for (double m : means) {
        EXPECT_NEAR(m, means.front(), 1e-12);
    }
}

TEST(drift, linear_construction) {
    auto series = synth_drift_series(make_spec(27), 100, 1, 1e-5, 0.0, 5);
    auto means = snapshot_means(series);
    EXPECT_NEAR(means.back() - means.front(), 1e-3, 1e-9);
    for (size_t k = 1; k < series.snapshots.size(); k++) {
        EXPECT_GT(series.snapshots[k].timestamp_unix_s, series.snapshots[k - 1].timestamp_unix_s);
    }
    EXPECT_EQ(series.snapshots[1].timestamp_unix_s - series.snapshots[0].timestamp_unix_s, 86400);
}

TEST(drift, noisy_slope_recovered_by_least_squares) {
    for (uint64_t seed = 0; seed < 5; seed++) {
        auto series = synth_drift_series(make_spec(27), 120, 2, 2e-5, 5e-4, seed);
        auto means = snapshot_means(series);
        std::vector<double> t;
        for (size_t k = 0; k < means.size(); k++) {
            t.push_back(static_cast<double>(k) / 2.0);
        }
        auto fit = oracle::fit_line(t, means);
        EXPECT_GT(fit.slope, 0.0);
        EXPECT_LE(std::abs(fit.slope - 2e-5), 3 * fit.slope_std_error) << "seed " << seed;
    }
}

TEST(drift, deterministic_and_round_trips) {
    auto a = synth_drift_series(make_spec(10, Topology::Ring), 3, 4, 1e-4, 1e-4, 77);
    auto b = synth_drift_series(make_spec(10, Topology::Ring), 3, 4, 1e-4, 1e-4, 77);
    EXPECT_EQ(serialize_drift_series(a), serialize_drift_series(b));
    auto back = parse_drift_series(serialize_drift_series(a));
    EXPECT_EQ(back.snapshots, a.snapshots);
}

TEST(drift, rejects_bad_arguments) {
    EXPECT_THROW(synth_drift_series(make_spec(10), 0, 1, 0, 0, 0), InputError);
    EXPECT_THROW(synth_drift_series(make_spec(10), 1, 0, 0, 0, 0), InputError);
    EXPECT_THROW(synth_drift_series(make_spec(10), 1, 1, 0, -1, 0), InputError);
}

TEST(smoothing, window_one_is_identity) {
    auto series = synth_drift_series(make_spec(27), 20, 1, 1e-5, 1e-4, 8);
    auto smooth = smooth_series(series, 1);
    auto means = snapshot_means(series);
    ASSERT_EQ(smooth.size(), means.size());
    for (size_t i = 0; i < means.size(); i++) {
        EXPECT_EQ(smooth[i].mean_cnot_error, means[i]);
        EXPECT_EQ(smooth[i].std_dev, 0.0);
        EXPECT_EQ(smooth[i].timestamp_unix_s, series.snapshots[i].timestamp_unix_s);
    }
}

TEST(smoothing, constant_series_any_window) {
    auto series = synth_drift_series(make_spec(10, Topology::Line), 10, 1, 0.0, 0.0, 1);
    for (size_t w = 1; w <= series.snapshots.size(); w++) {
        for (const auto &p : smooth_series(series, w)) {
            EXPECT_NEAR(p.mean_cnot_error, series.snapshots[0].mean_cnot_error(), 1e-15);
            EXPECT_NEAR(p.std_dev, 0.0, 1e-15);
        }
    }
}

TEST(smoothing, three_point_hand_computed) {
    DriftSeries series;
    for (int k = 0; k < 3; k++) {
        CalibrationSnapshot s;
        s.num_qubits = 2;
        s.timestamp_unix_s = k;
        s.cnot_error[{0, 1}] = 0.01 * (k + 1);
        series.snapshots.push_back(s);
    }
    auto out = smooth_series(series, 3);
    ASSERT_EQ(out.size(), 3u);
    EXPECT_NEAR(out[1].mean_cnot_error, 0.02, 1e-15);
    EXPECT_NEAR(out[1].std_dev, 0.008165, 1e-6);
    // Windows shrink to a single point at the ends.
    EXPECT_NEAR(out[0].mean_cnot_error, 0.01, 1e-15);
    EXPECT_EQ(out[0].std_dev, 0.0);
    EXPECT_NEAR(out[2].mean_cnot_error, 0.03, 1e-15);
}

TEST(smoothing, drifting_series_is_monotone) {
    auto series = synth_drift_series(make_spec(27), 40, 3, 1e-5, 0.0, 2);
    for (size_t w : {1, 2, 4, 7, 15, 30}) {
        auto out = smooth_series(series, w);
        for (size_t i = 1; i < out.size(); i++) {
            EXPECT_GE(out[i].mean_cnot_error, out[i - 1].mean_cnot_error - 1e-15) << "window " << w << " i " << i;
        }
    }
}

TEST(smoothing, rejects_bad_window) {
    DriftSeries empty;
    EXPECT_THROW(smooth_series(empty, 1), InputError);
    auto series = synth_drift_series(make_spec(5, Topology::Line), 2, 1, 0, 0, 0);
    EXPECT_THROW(smooth_series(series, 0), InputError);
    EXPECT_THROW(smooth_series(series, 4), InputError);
}

TEST(smoothing, csv_format) {
    DriftSeries series;
    CalibrationSnapshot s;
    s.num_qubits = 2;
    s.timestamp_unix_s = 100;
    s.cnot_error[{0, 1}] = 0.25;
    series.snapshots.push_back(s);
    EXPECT_EQ(smoothed_to_csv(smooth_series(series, 1)), "timestamp_unix_s,mean_cnot_error,std_dev\n100,0.25,0\n");
}
