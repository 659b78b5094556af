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

#include "qprune/pruner.h"

#include <algorithm>
#include <deque>

#include "json.hpp"
#include "qprune/errors.h"
#include "qprune/format.h"
#include "qprune/parallel.h"

namespace qprune {

namespace {

PrunedGraph prune_with(const DeviceGraph &graph, auto keep_node, auto keep_edge) {
    UndirectedGraph merged = undirected_view(graph);
    PrunedGraph out;
    UndirectedGraph &g = out.graph;
    g.num_qubits = merged.num_qubits;
    g.node_weight = merged.node_weight;
    g.present.assign(g.num_qubits, false);
    for (size_t q = 0; q < g.num_qubits; q++) {
        auto qubit = static_cast<Qubit>(q);
        g.present[q] = !graph.is_faulty(qubit) && keep_node(merged.node_weight[q]);
    }
    for (const auto &[e, w] : merged.edge_weight) {
        if (g.present[e.a] && g.present[e.b] && keep_edge(e, w)) {
            g.edge_weight.emplace(e, w);
        }
    }
    for (const auto &[pair, w] : graph.edge_weight) {
        if (g.edge_weight.contains(UndirectedEdge::of(pair.control, pair.target))) {
            out.directed_edges.insert(pair);
        }
    }
    return out;
}

nlohmann::ordered_json partition_json(const Partition &p, const ThresholdPolicy &policy, bool relabel) {
    nlohmann::ordered_json doc;
    PartitionCouplingMap exported = to_coupling_map(p, relabel);
    doc["qubits"] = p.qubits;
    auto edges = nlohmann::ordered_json::array();
    for (const auto &e : exported.map.edges) {
        edges.push_back({e.control, e.target});
    }
    doc["edges"] = std::move(edges);
    if (exported.relabel) {
        auto mapping = nlohmann::ordered_json::object();
        for (auto [from, to] : *exported.relabel) {
            mapping[std::to_string(from)] = to;
        }
        doc["relabel_map"] = std::move(mapping);
    } else {
        doc["relabel_map"] = nullptr;
    }
    doc["policy"] = {{"readout_error_max", policy.readout_error_max}, {"cnot_error_max", policy.cnot_error_max}};
    return doc;
}

}  // namespace

void ThresholdPolicy::validate() const {
    if (!(cnot_error_max >= 0.0 && cnot_error_max <= 1.0) || !(readout_error_max >= 0.0 && readout_error_max <= 1.0)) {
        throw InputError("thresholds must lie in [0, 1]");
    }
}

PrunedGraph prune(const DeviceGraph &graph, const ThresholdPolicy &policy) {
    policy.validate();
    return prune_with(
        graph, [&](const Weight &w) { return policy.admits_readout(w); },
        [&](const UndirectedEdge &, const Weight &w) { return policy.admits_cnot(w); });
}

PrunedGraph prune_faulty_only(const DeviceGraph &graph) {
    return prune_with(
        graph, [](const Weight &) { return true; },
        [&](const UndirectedEdge &e, const Weight &) {
            auto forward = graph.edge_weight.find({e.a, e.b});
            auto backward = graph.edge_weight.find({e.b, e.a});
            return (forward != graph.edge_weight.end() && forward->second) ||
                   (backward != graph.edge_weight.end() && backward->second);
        });
}

bool Partition::contains(Qubit q) const {
    return std::binary_search(qubits.begin(), qubits.end(), q);
}

std::vector<Partition> partitions(const PrunedGraph &pruned) {
    const UndirectedGraph &g = pruned.graph;
    auto adj = g.adjacency();
    std::vector<int64_t> component(g.num_qubits, -1);
    std::vector<Partition> out;
    for (size_t start = 0; start < g.num_qubits; start++) {
        if (!g.present[start] || component[start] >= 0) {
            continue;
        }
        auto id = static_cast<int64_t>(out.size());
        Partition p;
        p.device_qubits = g.num_qubits;
        std::deque<Qubit> frontier{static_cast<Qubit>(start)};
        component[start] = id;
        while (!frontier.empty()) {
            Qubit q = frontier.front();
            frontier.pop_front();
            p.qubits.push_back(q);
            for (Qubit nb : adj[q]) {
                if (component[nb] < 0) {
                    component[nb] = id;
                    frontier.push_back(nb);
                }
            }
        }
        std::sort(p.qubits.begin(), p.qubits.end());
        out.push_back(std::move(p));
    }
    for (const auto &e : pruned.directed_edges) {
        out[static_cast<size_t>(component[e.control])].edges.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const Partition &x, const Partition &y) {
        if (x.size() != y.size()) {
            return x.size() > y.size();
        }
        if (x.edges.size() != y.edges.size()) {
            return x.edges.size() > y.edges.size();
        }
        return x.qubits.front() < y.qubits.front();
    });
    return out;
}

Partition largest_partition(const DeviceGraph &graph, const ThresholdPolicy &policy) {
    auto ps = partitions(prune(graph, policy));
    if (ps.empty()) {
        throw EmptyResultError("empty partition: no qubit satisfies the thresholds");
    }
    return std::move(ps.front());
}

PartitionCouplingMap to_coupling_map(const Partition &p, bool relabel) {
    if (p.qubits.empty()) {
        throw EmptyResultError("cannot export an empty partition");
    }
    PartitionCouplingMap out;
    if (!relabel) {
        out.map.num_qubits = p.device_qubits;
        out.map.edges.insert(p.edges.begin(), p.edges.end());
        return out;
    }
    std::map<Qubit, Qubit> mapping;
    for (size_t i = 0; i < p.qubits.size(); i++) {
        mapping[p.qubits[i]] = static_cast<Qubit>(i);
    }
    out.map.num_qubits = p.qubits.size();
    for (const auto &e : p.edges) {
        out.map.edges.insert({mapping.at(e.control), mapping.at(e.target)});
    }
    out.relabel = std::move(mapping);
    return out;
}

std::vector<SweepRow> sweep(const DeviceGraph &graph, std::span<const double> readout_grid,
                            std::span<const double> cnot_grid, size_t threads) {
    if (readout_grid.empty() || cnot_grid.empty()) {
        throw InputError("sweep grids must be non-empty");
    }
    std::vector<SweepRow> rows(readout_grid.size() * cnot_grid.size());
    parallel_for(rows.size(), threads, [&](size_t i) {
        ThresholdPolicy policy{cnot_grid[i % cnot_grid.size()], readout_grid[i / cnot_grid.size()]};
        auto ps = partitions(prune(graph, policy));
        rows[i] = {policy.readout_error_max, policy.cnot_error_max, ps.empty() ? 0 : ps.front().size(), ps.size()};
    });
    return rows;
}

std::string sweep_to_csv(std::span<const SweepRow> rows) {
    std::string out = "readout_threshold,cnot_threshold,largest_partition_size,partition_count\n";
    for (const auto &r : rows) {
        out += format_real(r.readout_threshold) + "," + format_real(r.cnot_threshold) + "," +
               std::to_string(r.largest_partition_size) + "," + std::to_string(r.partition_count) + "\n";
    }
    return out;
}

std::string partition_to_json(const Partition &p, const ThresholdPolicy &policy, bool relabel) {
    return partition_json(p, policy, relabel).dump(2) + "\n";
}

std::string partitions_to_json(std::span<const Partition> ps, const ThresholdPolicy &policy, bool relabel) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto &p : ps) {
        arr.push_back(partition_json(p, policy, relabel));
    }
    return arr.dump(2) + "\n";
}

}  // namespace qprune
