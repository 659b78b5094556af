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

#ifndef QPRUNE_CALIBRATION_H
#define QPRUNE_CALIBRATION_H

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qprune {

using Qubit = uint32_t;

/// A native two-qubit gate direction.
struct DirectedPair {
    Qubit control = 0;
    Qubit target = 0;

    DirectedPair reversed() const { return {target, control}; }
    auto operator<=>(const DirectedPair &) const = default;
    bool operator==(const DirectedPair &) const = default;
};

std::string to_string(const DirectedPair &pair);

/// Per-qubit readout errors and per-direction CNOT errors measured at one
/// instant. Entries missing from the maps are unknown, not zero.
struct CalibrationSnapshot {
    std::string device_name;
    int64_t timestamp_unix_s = 0;
    size_t num_qubits = 0;
    std::map<Qubit, double> readout_error;
    std::map<DirectedPair, double> cnot_error;
    std::set<Qubit> faulty_qubits;

    /// Throws InputError when an index, probability or pair breaks the snapshot invariants.
    void validate() const;

    std::optional<double> readout(Qubit q) const;
    std::optional<double> cnot(DirectedPair pair) const;

    /// Arithmetic mean over all calibrated CNOT directions. NaN if there are none.
    double mean_cnot_error() const;

    bool operator==(const CalibrationSnapshot &) const = default;
};

/// Parses and validates a calibration document (JSON).
CalibrationSnapshot parse_snapshot(std::string_view text);

/// Serializes to the calibration document format. parse_snapshot inverts this exactly.
std::string serialize_snapshot(const CalibrationSnapshot &snap);

enum class Topology { HeavyHex, Grid, Line, Ring };

Topology parse_topology(std::string_view name);
std::string_view to_string(Topology topology);

/// Undirected qubit pairs (a < b) of a synthetic device of the given family.
///
/// HeavyHex lays out rows of 15 qubits joined by bridge qubits every fourth
/// column, alternating column offsets between consecutive row gaps, then keeps
/// the first `num_qubits` qubits. At 127 qubits this has the same shape and
/// edge density as a heavy-hex processor.
std::vector<std::pair<Qubit, Qubit>> topology_pairs(Topology topology, size_t num_qubits);

/// Parameters for synthetic calibration data.
///
/// Error rates are log-normal: ln(e) ~ Normal(ln(median), dispersion^2), so
/// `dispersion` is the standard deviation of the log error and exp(dispersion)
/// the multiplicative spread of one standard deviation.
struct SynthSpec {
    size_t num_qubits = 0;
    Topology topology = Topology::HeavyHex;
    double readout_median = 0.0;
    double readout_dispersion = 0.0;
    double cnot_median = 0.0;
    double cnot_dispersion = 0.0;
    double faulty_fraction = 0.0;

    void validate() const;
};

SynthSpec parse_synth_spec(std::string_view text);
std::string serialize_synth_spec(const SynthSpec &spec);

/// Fixed timestamp stamped on synthetic snapshots (2024-01-30T00:00:00Z).
inline constexpr int64_t kSynthEpochUnixS = 1706572800;

/// Draws a synthetic snapshot for the topology in `spec`. Both directions of a
/// coupled pair receive the same error. Pure function of (spec, seed).
CalibrationSnapshot synth_snapshot(const SynthSpec &spec, uint64_t seed);

struct DriftSeries {
    std::vector<CalibrationSnapshot> snapshots;
    double drift_rate = 0.0;
    double jitter = 0.0;

    void validate() const;
};

/// Ages a synthetic device. The series holds days * snapshots_per_day + 1
/// snapshots spanning days [0, days]; snapshot k sits at t = k / snapshots_per_day
/// days. Every CNOT error at time t equals its base value plus drift_rate * t
/// plus a per-snapshot offset jitter * z_k (z_k standard normal), clamped to
/// [0, 1]. Readout errors and faulty qubits stay fixed.
DriftSeries synth_drift_series(const SynthSpec &spec, int days, int snapshots_per_day, double drift_rate,
                               double jitter, uint64_t seed);

std::string serialize_drift_series(const DriftSeries &series);
DriftSeries parse_drift_series(std::string_view text);

struct SmoothedPoint {
    int64_t timestamp_unix_s = 0;
    double mean_cnot_error = 0.0;
    double std_dev = 0.0;
};

/// Centered moving average (and population std. dev.) of the per-snapshot mean
/// CNOT error. Near the ends the window shrinks equally on both sides so it
/// stays centered. `window` counts snapshots, not days.
std::vector<SmoothedPoint> smooth_series(const DriftSeries &series, size_t window);

std::string smoothed_to_csv(const std::vector<SmoothedPoint> &points);

}  // namespace qprune

#endif
