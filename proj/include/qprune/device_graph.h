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

#ifndef QPRUNE_DEVICE_GRAPH_H
#define QPRUNE_DEVICE_GRAPH_H

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qprune/calibration.h"

namespace qprune {

/// Directed gate connectivity of a device.
struct CouplingMap {
    size_t num_qubits = 0;
    std::set<DirectedPair> edges;

    void validate() const;
    bool operator==(const CouplingMap &) const = default;
};

CouplingMap parse_coupling_map(std::string_view text);
std::string serialize_coupling_map(const CouplingMap &map);

/// Bidirectional coupling map over topology_pairs(topology, num_qubits).
CouplingMap synth_coupling_map(Topology topology, size_t num_qubits);

/// An error rate that may be unknown. Unknown compares as worse than any threshold.
using Weight = std::optional<double>;

/// The device as a weighted network: qubits carry readout errors, directed
/// couplings carry CNOT errors.
struct DeviceGraph {
    size_t num_qubits = 0;
    std::vector<Weight> node_weight;
    std::map<DirectedPair, Weight> edge_weight;
    std::set<Qubit> faulty;

    bool is_faulty(Qubit q) const { return faulty.contains(q); }
};

struct WeightedGraphBuild {
    DeviceGraph graph;
    /// Calibrated directions that the coupling map does not contain. Ignored.
    std::vector<DirectedPair> unmatched_calibration;
};

/// Copies the snapshot's error rates onto the coupling map. Throws InputError
/// when the qubit counts disagree.
WeightedGraphBuild build_weighted_graph(const CouplingMap &coupling, const CalibrationSnapshot &snap);

/// Unordered qubit pair with a < b.
struct UndirectedEdge {
    Qubit a = 0;
    Qubit b = 0;

    static UndirectedEdge of(Qubit x, Qubit y) { return x < y ? UndirectedEdge{x, y} : UndirectedEdge{y, x}; }
    auto operator<=>(const UndirectedEdge &) const = default;
    bool operator==(const UndirectedEdge &) const = default;
};

/// Direction-agnostic view of a (possibly pruned) device. Qubits that are not
/// `present` have been removed.
struct UndirectedGraph {
    size_t num_qubits = 0;
    std::vector<bool> present;
    std::vector<Weight> node_weight;
    std::map<UndirectedEdge, Weight> edge_weight;

    size_t node_count() const;
    /// Adjacency lists over present qubits, each sorted ascending.
    std::vector<std::vector<Qubit>> adjacency() const;
};

/// Merges the two directions of each coupled pair. The merged weight is the
/// larger of the two directions, or unknown if any present direction is unknown.
UndirectedGraph undirected_view(const DeviceGraph &graph);

}  // namespace qprune

#endif
