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

#include "qprune/chainsim.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "qprune/errors.h"
#include "qprune/parallel.h"
#include "qprune/pauli.h"
#include "qprune/random.h"

namespace qprune {

namespace {

constexpr size_t kTrialsPerBlock = 4096;

double binomial_std_error(double p, size_t n) {
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

/// Shared trial loop for the gate-only and gate+readout estimators.
/// `readout_errors` is empty for the gate-only metric.
size_t count_successes(std::span<const double> gate_errors, std::span<const double> readout_errors,
                       size_t trials, uint64_t seed, size_t threads) {
    std::vector<double> clean_probability(gate_errors.size());
    for (size_t g = 0; g < gate_errors.size(); g++) {
        clean_probability[g] = gate_error_to_process_fidelity(gate_errors[g]);
    }
    size_t width = gate_errors.size() + 1;
    bool gate_only = readout_errors.empty();

    size_t blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    std::vector<size_t> block_successes(blocks, 0);
    parallel_for(blocks, threads, [&](size_t block) {
        PauliString frame(width);
        size_t begin = block * kTrialsPerBlock;
        size_t end = std::min(trials, begin + kTrialsPerBlock);
        size_t successes = 0;
        for (size_t trial = begin; trial < end; trial++) {
            Rng rng(derive_seed(seed, trial));
            frame.clear();
            for (size_t g = 0; g < clean_probability.size(); g++) {
                frame.apply_cnot(g, g + 1);
                if (rng.uniform() >= clean_probability[g]) {
                    // Bits of 1..15 select X_c, Z_c, X_t, Z_t.
                    uint64_t k = 1 + rng.below(15);
                    if (k & 1) frame.flip_x(g);
                    if (k & 2) frame.flip_z(g);
                    if (k & 4) frame.flip_x(g + 1);
                    if (k & 8) frame.flip_z(g + 1);
                }
            }
            if (gate_only) {
                successes += frame.is_identity();
                continue;
            }
            bool flipped = false;
            for (double r : readout_errors) {
                flipped |= rng.uniform() < r;
            }
            successes += !flipped && !frame.flips_any_bit();
        }
        block_successes[block] = successes;
    });
    size_t total = 0;
    for (size_t s : block_successes) {
        total += s;
    }
    return total;
}

template <typename Lookup>
std::vector<double> gate_errors_via(const ChainPath &path, Lookup lookup) {
    std::vector<double> errors;
    errors.reserve(path.gate_count());
    std::vector<Qubit> seen(path.qubits);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
        throw InputError("chain path repeats a qubit");
    }
    for (size_t i = 0; i + 1 < path.qubits.size(); i++) {
        DirectedPair executed{path.qubits[i], path.qubits[i + 1]};
        std::optional<double> e = lookup(executed);
        if (!e) {
            e = lookup(executed.reversed());
        }
        if (!e) {
            throw InputError("uncalibrated edge on path: " + to_string(executed));
        }
        errors.push_back(*e);
    }
    return errors;
}

}  // namespace

std::string path_to_string(const ChainPath &path) {
    std::string out;
    for (size_t i = 0; i < path.qubits.size(); i++) {
        if (i > 0) {
            out += '-';
        }
        out += std::to_string(path.qubits[i]);
    }
    return out;
}

ChainPath random_chain_path(const Partition &p, size_t length, uint64_t seed, size_t max_restarts) {
    if (length < 2) {
        throw InputError("chain length must be at least 2");
    }
    if (length > p.size()) {
        throw InfeasibleError("partition of " + std::to_string(p.size()) + " qubits is too small for a chain of " +
                              std::to_string(length));
    }
    auto local = [&](Qubit q) {
        return static_cast<size_t>(std::lower_bound(p.qubits.begin(), p.qubits.end(), q) - p.qubits.begin());
    };
    std::vector<std::vector<size_t>> adj(p.size());
    for (const auto &e : p.edges) {
        adj[local(e.control)].push_back(local(e.target));
        adj[local(e.target)].push_back(local(e.control));
    }
    for (auto &list : adj) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }

    Rng rng(seed);
    std::vector<bool> visited(p.size());
    std::vector<size_t> walk;
    std::vector<size_t> options;
    walk.reserve(length);
    for (size_t attempt = 0; attempt < max_restarts; attempt++) {
        std::fill(visited.begin(), visited.end(), false);
        walk.clear();
        size_t current = rng.below(p.size());
        walk.push_back(current);
        visited[current] = true;
        while (walk.size() < length) {
            options.clear();
            for (size_t nb : adj[current]) {
                if (!visited[nb]) {
                    options.push_back(nb);
                }
            }
            if (options.empty()) {
                break;
            }
            current = options[rng.below(options.size())];
            walk.push_back(current);
            visited[current] = true;
        }
        if (walk.size() == length) {
            ChainPath path;
            for (size_t i : walk) {
                path.qubits.push_back(p.qubits[i]);
            }
            return path;
        }
    }
    throw PathNotFoundError("no path found: no self-avoiding walk of " + std::to_string(length) + " qubits after " +
                            std::to_string(max_restarts) + " attempts");
}

double gate_error_to_process_fidelity(double e) {
    if (!(e >= 0.0 && e <= 1.0)) {
        throw InputError("gate error must lie in [0, 1]");
    }
    return std::clamp((5.0 * (1.0 - e) - 1.0) / 4.0, 0.0, 1.0);
}

double process_to_gate_fidelity(double process_fidelity) {
    if (!(process_fidelity >= 0.0 && process_fidelity <= 1.0)) {
        throw InputError("process fidelity must lie in [0, 1]");
    }
    return (4.0 * process_fidelity + 1.0) / 5.0;
}

std::vector<double> chain_gate_errors(const ChainPath &path, const CalibrationSnapshot &snap) {
    return gate_errors_via(path, [&](DirectedPair pair) { return snap.cnot(pair); });
}

std::vector<double> chain_gate_errors(const ChainPath &path, const DeviceGraph &graph) {
    return gate_errors_via(path, [&](DirectedPair pair) -> std::optional<double> {
        auto it = graph.edge_weight.find(pair);
        return it == graph.edge_weight.end() ? std::nullopt : it->second;
    });
}

FidelityEstimate mc_chain_process_fidelity(std::span<const double> gate_errors, size_t trials, uint64_t seed,
                                           size_t threads) {
    if (trials == 0) {
        throw InputError("trials must be at least 1");
    }
    size_t successes = count_successes(gate_errors, {}, trials, seed, threads);
    FidelityEstimate out;
    out.trials = trials;
    out.process_fidelity = static_cast<double>(successes) / static_cast<double>(trials);
    out.gate_fidelity = process_to_gate_fidelity(out.process_fidelity);
    out.std_error = binomial_std_error(out.process_fidelity, trials);
    return out;
}

FidelityEstimate mc_chain_process_fidelity(const ChainPath &path, const CalibrationSnapshot &snap, size_t trials,
                                           uint64_t seed, size_t threads) {
    return mc_chain_process_fidelity(chain_gate_errors(path, snap), trials, seed, threads);
}

FidelityEstimate analytic_chain_fidelity(std::span<const double> gate_errors) {
    double product = 1.0;
    for (double e : gate_errors) {
        product *= gate_error_to_process_fidelity(e);
    }
    FidelityEstimate out;
    out.process_fidelity = product;
    out.gate_fidelity = process_to_gate_fidelity(product);
    return out;
}

FidelityEstimate analytic_chain_fidelity(const ChainPath &path, const CalibrationSnapshot &snap) {
    return analytic_chain_fidelity(chain_gate_errors(path, snap));
}

SuccessEstimate end_to_end_success(const ChainPath &path, const CalibrationSnapshot &snap, size_t trials,
                                   uint64_t seed, size_t threads) {
    if (trials == 0) {
        throw InputError("trials must be at least 1");
    }
    if (path.qubits.empty()) {
        throw InputError("chain path is empty");
    }
    std::vector<double> gate_errors = chain_gate_errors(path, snap);
    std::vector<double> readout_errors;
    for (Qubit q : path.qubits) {
        auto r = snap.readout(q);
        if (!r) {
            throw InputError("uncalibrated qubit on path: " + std::to_string(q));
        }
        readout_errors.push_back(*r);
    }
    size_t successes = count_successes(gate_errors, readout_errors, trials, seed, threads);
    SuccessEstimate out;
    out.trials = trials;
    out.probability = static_cast<double>(successes) / static_cast<double>(trials);
    out.std_error = binomial_std_error(out.probability, trials);
    return out;
}

std::string chain_result_to_json(const ChainPath &path, const FidelityEstimate &estimate) {
    nlohmann::ordered_json doc;
    doc["path"] = path.qubits;
    doc["trials"] = estimate.trials;
    doc["process_fidelity"] = estimate.process_fidelity;
    doc["gate_fidelity"] = estimate.gate_fidelity;
    doc["std_error"] = estimate.std_error;
    return doc.dump(2) + "\n";
}

}  // namespace qprune
