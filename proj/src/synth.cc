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
#include <array>
#include <cmath>
#include <numeric>
#include <optional>

#include "json.hpp"
#include "qprune/calibration.h"
#include "qprune/errors.h"
#include "qprune/random.h"

namespace qprune {

namespace {

constexpr size_t kHeavyHexRowWidth = 15;
constexpr std::array<size_t, 4> kBridgeColumnsEven{0, 4, 8, 12};
constexpr std::array<size_t, 4> kBridgeColumnsOdd{2, 6, 10, 14};

// Streams carved out of the caller's seed so that e.g. the faulty-qubit draw
// does not shift when the number of CNOT entries changes.
enum SynthStream : uint64_t { kReadoutStream = 1, kCnotStream = 2, kFaultyStream = 3 };
enum DriftStream : uint64_t { kBaseStream = 0, kJitterStream = 1 };

std::vector<std::pair<Qubit, Qubit>> heavy_hex_pairs(size_t n) {
    // Rows of kHeavyHexRowWidth columns (the first row one shorter, as on
    // heavy-hex processors) separated by four bridge qubits. A truncated last
    // row is aligned to the side its bridges attach to.
    std::vector<std::pair<Qubit, Qubit>> pairs;
    auto add = [&](size_t a, size_t b) {
        pairs.emplace_back(static_cast<Qubit>(std::min(a, b)), static_cast<Qubit>(std::max(a, b)));
    };
    // column -> qubit index for the previous row
    std::vector<std::optional<size_t>> previous_row;
    size_t next = 0;
    for (size_t row_index = 0; next < n; row_index++) {
        const auto &columns = row_index % 2 == 1 ? kBridgeColumnsEven : kBridgeColumnsOdd;
        std::vector<size_t> bridges;
        if (row_index > 0) {
            for (size_t b = 0; b < columns.size() && next < n; b++, next++) {
                if (previous_row[columns[b]]) {
                    add(*previous_row[columns[b]], next);
                }
                bridges.push_back(next);
            }
        }
        size_t width = row_index == 0 ? kHeavyHexRowWidth - 1 : kHeavyHexRowWidth;
        size_t count = std::min(width, n - next);
        size_t first_column = 0;
        if (row_index > 0 && count < width && columns.back() == kHeavyHexRowWidth - 1) {
            first_column = kHeavyHexRowWidth - count;
        }
        std::vector<std::optional<size_t>> row(kHeavyHexRowWidth);
        for (size_t i = 0; i < count; i++, next++) {
            row[first_column + i] = next;
            if (i > 0) {
                add(next - 1, next);
            }
        }
        for (size_t b = 0; b < bridges.size(); b++) {
            if (row[columns[b]]) {
                add(bridges[b], *row[columns[b]]);
            }
        }
        previous_row = std::move(row);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

double lognormal(Rng &rng, double median, double dispersion) {
    return std::clamp(median * std::exp(dispersion * rng.normal()), 0.0, 1.0);
}

void check_open_unit(double v, const char *what) {
    if (!(v > 0.0 && v < 1.0)) {
        throw InputError(std::string(what) + " must lie in (0, 1)");
    }
}

}  // namespace

Topology parse_topology(std::string_view name) {
    if (name == "heavy-hex" || name == "heavy-hex-like") {
        return Topology::HeavyHex;
    }
    if (name == "grid") {
        return Topology::Grid;
    }
    if (name == "line") {
        return Topology::Line;
    }
    if (name == "ring") {
        return Topology::Ring;
    }
    throw InputError("unknown topology '" + std::string(name) + "'");
}

std::string_view to_string(Topology topology) {
    switch (topology) {
        case Topology::HeavyHex:
            return "heavy-hex";
        case Topology::Grid:
            return "grid";
        case Topology::Line:
            return "line";
        case Topology::Ring:
            return "ring";
    }
    return "?";
}

std::vector<std::pair<Qubit, Qubit>> topology_pairs(Topology topology, size_t n) {
    std::vector<std::pair<Qubit, Qubit>> pairs;
    switch (topology) {
        case Topology::HeavyHex:
            return heavy_hex_pairs(n);
        case Topology::Grid: {
            auto cols = static_cast<size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
            for (size_t q = 0; q < n; q++) {
                if ((q + 1) % cols != 0 && q + 1 < n) {
                    pairs.emplace_back(q, q + 1);
                }
                if (q + cols < n) {
                    pairs.emplace_back(q, q + cols);
                }
            }
            break;
        }
        case Topology::Line:
        case Topology::Ring:
            for (size_t q = 0; q + 1 < n; q++) {
                pairs.emplace_back(q, q + 1);
            }
            if (topology == Topology::Ring && n >= 3) {
                pairs.emplace_back(0, n - 1);
            }
            break;
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

void SynthSpec::validate() const {
    if (num_qubits == 0) {
        throw InputError("num_qubits must be positive");
    }
    check_open_unit(readout_median, "readout_median");
    check_open_unit(cnot_median, "cnot_median");
    if (!(readout_dispersion > 0.0) || !(cnot_dispersion > 0.0) || !std::isfinite(readout_dispersion) ||
        !std::isfinite(cnot_dispersion)) {
        throw InputError("dispersions must be positive and finite");
    }
    if (!(faulty_fraction >= 0.0 && faulty_fraction < 1.0)) {
        throw InputError("faulty_fraction must lie in [0, 1)");
    }
}

SynthSpec parse_synth_spec(std::string_view text) {
    using nlohmann::json;
    SynthSpec spec;
    try {
        json doc = json::parse(text.begin(), text.end());
        spec.num_qubits = doc.at("num_qubits").get<size_t>();
        spec.topology = parse_topology(doc.at("topology").get<std::string>());
        spec.readout_median = doc.at("readout_median").get<double>();
        spec.readout_dispersion = doc.at("readout_dispersion").get<double>();
        spec.cnot_median = doc.at("cnot_median").get<double>();
        spec.cnot_dispersion = doc.at("cnot_dispersion").get<double>();
        spec.faulty_fraction = doc.value("faulty_fraction", 0.0);
    } catch (const json::exception &e) {
        throw InputError(std::string("malformed synth spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

std::string serialize_synth_spec(const SynthSpec &spec) {
    nlohmann::ordered_json doc;
    doc["num_qubits"] = spec.num_qubits;
    doc["topology"] = to_string(spec.topology);
    doc["readout_median"] = spec.readout_median;
    doc["readout_dispersion"] = spec.readout_dispersion;
    doc["cnot_median"] = spec.cnot_median;
    doc["cnot_dispersion"] = spec.cnot_dispersion;
    doc["faulty_fraction"] = spec.faulty_fraction;
    return doc.dump(2) + "\n";
}

CalibrationSnapshot synth_snapshot(const SynthSpec &spec, uint64_t seed) {
    spec.validate();
    CalibrationSnapshot snap;
    snap.device_name = "synthetic-" + std::string(to_string(spec.topology)) + "-" + std::to_string(spec.num_qubits);
    snap.timestamp_unix_s = kSynthEpochUnixS;
    snap.num_qubits = spec.num_qubits;

    Rng readout_rng(derive_seed(seed, kReadoutStream));
    for (size_t q = 0; q < spec.num_qubits; q++) {
        snap.readout_error[static_cast<Qubit>(q)] = lognormal(readout_rng, spec.readout_median, spec.readout_dispersion);
    }

    Rng cnot_rng(derive_seed(seed, kCnotStream));
    for (auto [a, b] : topology_pairs(spec.topology, spec.num_qubits)) {
        double e = lognormal(cnot_rng, spec.cnot_median, spec.cnot_dispersion);
        snap.cnot_error[{a, b}] = e;
        snap.cnot_error[{b, a}] = e;
    }

    auto faulty_count = static_cast<size_t>(std::floor(spec.faulty_fraction * static_cast<double>(spec.num_qubits)));
    std::vector<Qubit> order(spec.num_qubits);
    std::iota(order.begin(), order.end(), 0);
    Rng faulty_rng(derive_seed(seed, kFaultyStream));
    for (size_t i = 0; i < faulty_count; i++) {
        size_t j = i + faulty_rng.below(order.size() - i);
        std::swap(order[i], order[j]);
        snap.faulty_qubits.insert(order[i]);
    }
    return snap;
}

DriftSeries synth_drift_series(const SynthSpec &spec, int days, int snapshots_per_day, double drift_rate,
                               double jitter, uint64_t seed) {
    if (days < 1 || snapshots_per_day < 1) {
        throw InputError("days and snapshots_per_day must be at least 1");
    }
    if (snapshots_per_day > 86400) {
        throw InputError("snapshots_per_day must not exceed one per second");
    }
    if (!std::isfinite(drift_rate) || !(jitter >= 0.0) || !std::isfinite(jitter)) {
        throw InputError("drift_rate must be finite and jitter non-negative");
    }
    CalibrationSnapshot base = synth_snapshot(spec, derive_seed(seed, kBaseStream));
    Rng jitter_rng(derive_seed(seed, kJitterStream));

    DriftSeries series;
    series.drift_rate = drift_rate;
    series.jitter = jitter;
    size_t count = static_cast<size_t>(days) * static_cast<size_t>(snapshots_per_day) + 1;
    series.snapshots.reserve(count);
    for (size_t k = 0; k < count; k++) {
        double t_days = static_cast<double>(k) / snapshots_per_day;
        double offset = drift_rate * t_days;
        if (jitter > 0.0) {
            offset += jitter * jitter_rng.normal();
        }
        CalibrationSnapshot snap = base;
        snap.timestamp_unix_s = base.timestamp_unix_s + static_cast<int64_t>(k) * 86400 / snapshots_per_day;
        for (auto &[pair, e] : snap.cnot_error) {
            e = std::clamp(e + offset, 0.0, 1.0);
        }
        series.snapshots.push_back(std::move(snap));
    }
    return series;
}

}  // namespace qprune
