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

#include "qprune/device_graph.h"

#include <algorithm>

#include "json.hpp"
#include "qprune/errors.h"

namespace qprune {

void CouplingMap::validate() const {
    for (const auto &e : edges) {
        if (e.control == e.target) {
            throw InputError("self-loop pair " + to_string(e) + " in coupling map");
        }
        if (e.control >= num_qubits || e.target >= num_qubits) {
            throw InputError("coupling map edge " + to_string(e) + " out of range");
        }
    }
}

CouplingMap parse_coupling_map(std::string_view text) {
    using nlohmann::json;
    CouplingMap map;
    try {
        json doc = json::parse(text.begin(), text.end());
        if (!doc.at("num_qubits").is_number_integer() || doc.at("num_qubits").get<int64_t>() < 0) {
            throw InputError("num_qubits must be a non-negative integer");
        }
        map.num_qubits = doc.at("num_qubits").get<size_t>();
        for (const auto &edge : doc.at("edges")) {
            if (!edge.is_array() || edge.size() != 2 || !edge[0].is_number_unsigned() ||
                !edge[1].is_number_unsigned()) {
                throw InputError("coupling map edges must be [control, target] pairs of indices");
            }
            map.edges.insert({edge[0].get<Qubit>(), edge[1].get<Qubit>()});
        }
    } catch (const json::exception &e) {
        throw InputError(std::string("malformed coupling map: ") + e.what());
    }
    map.validate();
    return map;
}

std::string serialize_coupling_map(const CouplingMap &map) {
    nlohmann::ordered_json doc;
    doc["num_qubits"] = map.num_qubits;
    auto edges = nlohmann::ordered_json::array();
    for (const auto &e : map.edges) {
        edges.push_back({e.control, e.target});
    }
    doc["edges"] = std::move(edges);
    return doc.dump() + "\n";
}

CouplingMap synth_coupling_map(Topology topology, size_t num_qubits) {
    CouplingMap map;
    map.num_qubits = num_qubits;
    for (auto [a, b] : topology_pairs(topology, num_qubits)) {
        map.edges.insert({a, b});
        map.edges.insert({b, a});
    }
    return map;
}

WeightedGraphBuild build_weighted_graph(const CouplingMap &coupling, const CalibrationSnapshot &snap) {
    if (coupling.num_qubits != snap.num_qubits) {
        throw InputError("qubit count mismatch: coupling map has " + std::to_string(coupling.num_qubits) +
                         ", calibration has " + std::to_string(snap.num_qubits));
    }
    coupling.validate();
    snap.validate();

    WeightedGraphBuild out;
    DeviceGraph &g = out.graph;
    g.num_qubits = coupling.num_qubits;
    g.node_weight.resize(g.num_qubits);
    for (const auto &[q, p] : snap.readout_error) {
        g.node_weight[q] = p;
    }
    for (const auto &e : coupling.edges) {
        g.edge_weight[e] = snap.cnot(e);
    }
    for (const auto &[pair, p] : snap.cnot_error) {
        if (!coupling.edges.contains(pair)) {
            out.unmatched_calibration.push_back(pair);
        }
    }
    g.faulty = snap.faulty_qubits;
    return out;
}

size_t UndirectedGraph::node_count() const {
    return static_cast<size_t>(std::count(present.begin(), present.end(), true));
}

std::vector<std::vector<Qubit>> UndirectedGraph::adjacency() const {
    std::vector<std::vector<Qubit>> adj(num_qubits);
    for (const auto &[e, w] : edge_weight) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (auto &list : adj) {
        std::sort(list.begin(), list.end());
    }
    return adj;
}

UndirectedGraph undirected_view(const DeviceGraph &graph) {
    UndirectedGraph out;
    out.num_qubits = graph.num_qubits;
    out.present.assign(graph.num_qubits, true);
    out.node_weight = graph.node_weight;
    for (const auto &[pair, w] : graph.edge_weight) {
        auto key = UndirectedEdge::of(pair.control, pair.target);
        auto [it, inserted] = out.edge_weight.emplace(key, w);
        if (inserted) {
            continue;
        }
        if (!it->second || !w) {
            it->second = std::nullopt;
        } else {
            it->second = std::max(*it->second, *w);
        }
    }
    return out;
}

}  // namespace qprune
