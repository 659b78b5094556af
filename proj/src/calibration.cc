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

#include "qprune/calibration.h"

#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "qprune/errors.h"
#include "qprune/format.h"

namespace qprune {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::optional<Qubit> parse_index(std::string_view s) {
    uint64_t value = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size() ||
        value > std::numeric_limits<Qubit>::max()) {
        return std::nullopt;
    }
    return static_cast<Qubit>(value);
}

DirectedPair parse_pair_key(const std::string &key) {
    size_t dash = key.find('-');
    if (dash == std::string::npos) {
        throw InputError("malformed CNOT key '" + key + "' (expected '<control>-<target>')");
    }
    auto c = parse_index(std::string_view(key).substr(0, dash));
    auto t = parse_index(std::string_view(key).substr(dash + 1));
    if (!c || !t) {
        throw InputError("malformed CNOT key '" + key + "' (expected '<control>-<target>')");
    }
    return {*c, *t};
}

void check_probability(double p, const std::string &what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InputError("probability outside [0,1] for " + what + ": " + format_real(p));
    }
}

template <typename T>
T require(const json &doc, const char *field) {
    auto it = doc.find(field);
    if (it == doc.end()) {
        throw InputError(std::string("missing field '") + field + "'");
    }
    try {
        return it->get<T>();
    } catch (const json::exception &) {
        throw InputError(std::string("field '") + field + "' has the wrong type");
    }
}

double require_number(const json &value, const std::string &what) {
    if (!value.is_number()) {
        throw InputError(what + " is not a number");
    }
    return value.get<double>();
}

CalibrationSnapshot snapshot_from_json(const json &doc) {
    if (!doc.is_object()) {
        throw InputError("calibration document must be a JSON object");
    }
    CalibrationSnapshot snap;
    snap.device_name = require<std::string>(doc, "device_name");
    const json &ts = doc.contains("timestamp_unix_s") ? doc["timestamp_unix_s"] : json();
    if (!ts.is_number_integer()) {
        throw InputError("field 'timestamp_unix_s' must be an integer");
    }
    snap.timestamp_unix_s = ts.get<int64_t>();
    const json &n = doc.contains("num_qubits") ? doc["num_qubits"] : json();
    if (!n.is_number_integer() || n.get<int64_t>() < 0) {
        throw InputError("field 'num_qubits' must be a non-negative integer");
    }
    snap.num_qubits = n.get<size_t>();

    const json &readout = doc.contains("readout_error") ? doc["readout_error"] : json::object();
    if (!readout.is_object()) {
        throw InputError("field 'readout_error' must be an object");
    }
    for (const auto &[key, value] : readout.items()) {
        auto q = parse_index(key);
        if (!q) {
            throw InputError("malformed readout key '" + key + "'");
        }
        double p = require_number(value, "readout_error[" + key + "]");
        if (!snap.readout_error.emplace(*q, p).second) {
            throw InputError("duplicate readout entry for qubit " + std::to_string(*q));
        }
    }

    const json &cnot = doc.contains("cnot_error") ? doc["cnot_error"] : json::object();
    if (!cnot.is_object()) {
        throw InputError("field 'cnot_error' must be an object");
    }
    for (const auto &[key, value] : cnot.items()) {
        DirectedPair pair = parse_pair_key(key);
        double p = require_number(value, "cnot_error[" + key + "]");
        if (!snap.cnot_error.emplace(pair, p).second) {
            throw InputError("duplicate directed pair " + to_string(pair));
        }
    }

    const json &faulty = doc.contains("faulty_qubits") ? doc["faulty_qubits"] : json::array();
    if (!faulty.is_array()) {
        throw InputError("field 'faulty_qubits' must be an array");
    }
    for (const auto &q : faulty) {
        if (!q.is_number_integer() || q.get<int64_t>() < 0) {
            throw InputError("faulty_qubits entries must be non-negative integers");
        }
        snap.faulty_qubits.insert(q.get<Qubit>());
    }
    snap.validate();
    return snap;
}

ordered_json snapshot_to_json(const CalibrationSnapshot &snap) {
    ordered_json doc;
    doc["device_name"] = snap.device_name;
    doc["timestamp_unix_s"] = snap.timestamp_unix_s;
    doc["num_qubits"] = snap.num_qubits;
    ordered_json readout = ordered_json::object();
    for (const auto &[q, p] : snap.readout_error) {
        readout[std::to_string(q)] = p;
    }
    doc["readout_error"] = std::move(readout);
    ordered_json cnot = ordered_json::object();
    for (const auto &[pair, p] : snap.cnot_error) {
        cnot[to_string(pair)] = p;
    }
    doc["cnot_error"] = std::move(cnot);
    doc["faulty_qubits"] = snap.faulty_qubits;
    return doc;
}

/// Parser callback that rejects repeated keys inside one object; nlohmann
/// otherwise keeps the last value silently.
json parse_rejecting_duplicate_keys(std::string_view text) {
    std::vector<std::set<std::string>> open_objects;
    auto callback = [&](int, json::parse_event_t event, json &parsed) {
        switch (event) {
            case json::parse_event_t::object_start:
                open_objects.emplace_back();
                break;
            case json::parse_event_t::object_end:
                open_objects.pop_back();
                break;
            case json::parse_event_t::key: {
                auto key = parsed.get<std::string>();
                if (!open_objects.back().insert(key).second) {
                    throw InputError("duplicate key '" + key + "' (duplicate directed pair or qubit entry)");
                }
                break;
            }
            default:
                break;
        }
        return true;
    };
    try {
        return json::parse(text.begin(), text.end(), callback);
    } catch (const json::parse_error &e) {
        throw InputError(std::string("malformed document: ") + e.what());
    }
}

}  // namespace

std::string to_string(const DirectedPair &pair) {
    return std::to_string(pair.control) + "-" + std::to_string(pair.target);
}

void CalibrationSnapshot::validate() const {
    auto in_range = [&](Qubit q) { return q < num_qubits; };
    for (const auto &[q, p] : readout_error) {
        if (!in_range(q)) {
            throw InputError("qubit index " + std::to_string(q) + " out of range [0, " +
                             std::to_string(num_qubits) + ")");
        }
        check_probability(p, "readout of qubit " + std::to_string(q));
    }
    for (const auto &[pair, p] : cnot_error) {
        if (pair.control == pair.target) {
            throw InputError("self-loop pair " + to_string(pair));
        }
        if (!in_range(pair.control) || !in_range(pair.target)) {
            throw InputError("qubit index out of range in pair " + to_string(pair));
        }
        check_probability(p, "CNOT " + to_string(pair));
    }
    for (Qubit q : faulty_qubits) {
        if (!in_range(q)) {
            throw InputError("faulty qubit index " + std::to_string(q) + " out of range");
        }
    }
}

std::optional<double> CalibrationSnapshot::readout(Qubit q) const {
    auto it = readout_error.find(q);
    if (it == readout_error.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<double> CalibrationSnapshot::cnot(DirectedPair pair) const {
    auto it = cnot_error.find(pair);
    if (it == cnot_error.end()) {
        return std::nullopt;
    }
    return it->second;
}

double CalibrationSnapshot::mean_cnot_error() const {
    if (cnot_error.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double total = 0.0;
    for (const auto &[pair, p] : cnot_error) {
        total += p;
    }
    return total / static_cast<double>(cnot_error.size());
}

CalibrationSnapshot parse_snapshot(std::string_view text) {
    return snapshot_from_json(parse_rejecting_duplicate_keys(text));
}

std::string serialize_snapshot(const CalibrationSnapshot &snap) {
    return snapshot_to_json(snap).dump(2) + "\n";
}

void DriftSeries::validate() const {
    for (size_t k = 0; k < snapshots.size(); k++) {
        snapshots[k].validate();
        if (k > 0 && snapshots[k].timestamp_unix_s <= snapshots[k - 1].timestamp_unix_s) {
            throw InputError("drift series timestamps must be strictly increasing");
        }
    }
}

std::string serialize_drift_series(const DriftSeries &series) {
    ordered_json arr = ordered_json::array();
    for (const auto &snap : series.snapshots) {
        arr.push_back(snapshot_to_json(snap));
    }
    return arr.dump(2) + "\n";
}

DriftSeries parse_drift_series(std::string_view text) {
    json doc = parse_rejecting_duplicate_keys(text);
    if (!doc.is_array()) {
        throw InputError("drift series document must be a JSON array");
    }
    DriftSeries series;
    for (const auto &item : doc) {
        series.snapshots.push_back(snapshot_from_json(item));
    }
    series.validate();
    return series;
}

std::vector<SmoothedPoint> smooth_series(const DriftSeries &series, size_t window) {
    size_t n = series.snapshots.size();
    if (n == 0) {
        throw InputError("cannot smooth an empty series");
    }
    if (window < 1 || window > n) {
        throw InputError("smoothing window must lie in [1, series length]");
    }
    std::vector<double> means(n);
    for (size_t k = 0; k < n; k++) {
        means[k] = series.snapshots[k].mean_cnot_error();
    }

    size_t reach_left = (window - 1) / 2;
    size_t reach_right = window / 2;
    std::vector<SmoothedPoint> out(n);
    for (size_t i = 0; i < n; i++) {
        size_t left = reach_left;
        size_t right = reach_right;
        if (i < reach_left || n - 1 - i < reach_right) {
            left = right = std::min({i, n - 1 - i, reach_left});
        }
        size_t lo = i - left;
        size_t hi = i + right;
        double count = static_cast<double>(hi - lo + 1);
        double mean = 0.0;
        for (size_t k = lo; k <= hi; k++) {
            mean += means[k];
        }
        mean /= count;
        double var = 0.0;
        for (size_t k = lo; k <= hi; k++) {
            var += (means[k] - mean) * (means[k] - mean);
        }
        out[i] = {series.snapshots[i].timestamp_unix_s, mean, std::sqrt(var / count)};
    }
    return out;
}

std::string smoothed_to_csv(const std::vector<SmoothedPoint> &points) {
    std::string out = "timestamp_unix_s,mean_cnot_error,std_dev\n";
    for (const auto &p : points) {
        out += std::to_string(p.timestamp_unix_s) + "," + format_real(p.mean_cnot_error) + "," +
               format_real(p.std_dev) + "\n";
    }
    return out;
}

}  // namespace qprune
