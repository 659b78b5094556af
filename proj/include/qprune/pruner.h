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

#ifndef QPRUNE_PRUNER_H
#define QPRUNE_PRUNER_H

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qprune/device_graph.h"

namespace qprune {

/// The two user-supplied error ceilings. An element is admitted when its error
/// is known and not larger than the ceiling.
struct ThresholdPolicy {
    double cnot_error_max = 1.0;
    double readout_error_max = 1.0;

    void validate() const;
    bool admits_readout(const Weight &w) const { return w && *w <= readout_error_max; }
    bool admits_cnot(const Weight &w) const { return w && *w <= cnot_error_max; }
};

/// Undirected survivors of pruning, plus the directed couplings between them.
struct PrunedGraph {
    UndirectedGraph graph;
    std::set<DirectedPair> directed_edges;
};

/// Drops faulty qubits, qubits whose readout error is unknown or above the
/// ceiling, and merged couplings whose CNOT error is unknown or above the
/// ceiling or that touch a dropped qubit.
PrunedGraph prune(const DeviceGraph &graph, const ThresholdPolicy &policy);

/// Drops only faulty qubits and couplings with no calibrated direction.
/// Used as the unpruned reference device.
PrunedGraph prune_faulty_only(const DeviceGraph &graph);

/// A connected set of surviving qubits with every surviving coupling among them.
struct Partition {
    size_t device_qubits = 0;
    std::vector<Qubit> qubits;        // ascending
    std::vector<DirectedPair> edges;  // ascending

    size_t size() const { return qubits.size(); }
    bool contains(Qubit q) const;
    bool operator==(const Partition &) const = default;
};

/// Connected components of the pruned graph, largest first. Ties are broken by
/// more directed edges, then by the smaller lowest qubit index.
std::vector<Partition> partitions(const PrunedGraph &pruned);

/// First entry of partitions(prune(graph, policy)). Throws EmptyResultError if
/// no qubit survives.
Partition largest_partition(const DeviceGraph &graph, const ThresholdPolicy &policy);

struct PartitionCouplingMap {
    CouplingMap map;
    /// original index -> compact index; empty optional when not relabelled.
    std::optional<std::map<Qubit, Qubit>> relabel;
};

/// Exports a partition as a coupling map. With `relabel` the qubits become
/// 0..size-1 in ascending original order; otherwise original indices are kept
/// and num_qubits is the device size.
PartitionCouplingMap to_coupling_map(const Partition &p, bool relabel);

struct SweepRow {
    double readout_threshold = 0.0;
    double cnot_threshold = 0.0;
    size_t largest_partition_size = 0;
    size_t partition_count = 0;

    bool operator==(const SweepRow &) const = default;
};

/// Evaluates every (readout, cnot) grid point, readout-major. Grid points are
/// independent and may run on `threads` workers; row order never changes.
std::vector<SweepRow> sweep(const DeviceGraph &graph, std::span<const double> readout_grid,
                            std::span<const double> cnot_grid, size_t threads = 1);

std::string sweep_to_csv(std::span<const SweepRow> rows);

std::string partition_to_json(const Partition &p, const ThresholdPolicy &policy, bool relabel);
std::string partitions_to_json(std::span<const Partition> ps, const ThresholdPolicy &policy, bool relabel);

}  // namespace qprune

#endif
