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

#ifndef QPRUNE_CHAINSIM_H
#define QPRUNE_CHAINSIM_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qprune/calibration.h"
#include "qprune/device_graph.h"
#include "qprune/pruner.h"

namespace qprune {

/// A simple path of qubits. The chain applies CNOT(q[i], q[i+1]) for i = 0, 1, ...
struct ChainPath {
    std::vector<Qubit> qubits;

    size_t gate_count() const { return qubits.empty() ? 0 : qubits.size() - 1; }
    bool operator==(const ChainPath &) const = default;
};

/// "3-4-5" style rendering used in CSV output.
std::string path_to_string(const ChainPath &path);

inline constexpr size_t kDefaultWalkRestarts = 10000;

/// Self-avoiding random walk of `length` qubits inside the partition. The start
/// qubit is uniform over the partition and each step is uniform over unvisited
/// neighbours; a walk that gets stuck is discarded and a new one started.
/// Throws PathNotFoundError once `max_restarts` walks have failed, and
/// InfeasibleError when `length` exceeds the partition size.
ChainPath random_chain_path(const Partition &p, size_t length, uint64_t seed,
                            size_t max_restarts = kDefaultWalkRestarts);

struct FidelityEstimate {
    double process_fidelity = 0.0;
    double gate_fidelity = 0.0;
    /// Binomial standard error of process_fidelity (0 for analytic values).
    double std_error = 0.0;
    size_t trials = 0;
};

/// (5 (1 - e) - 1) / 4 clamped to [0, 1]: process fidelity of a two-qubit gate
/// whose average gate error is e.
double gate_error_to_process_fidelity(double e);

/// (4 F_process + 1) / 5.
double process_to_gate_fidelity(double process_fidelity);

/// Per-gate CNOT errors along the path, taken in the executed direction or,
/// failing that, the reverse direction. Throws InputError for an uncalibrated
/// or repeated step.
std::vector<double> chain_gate_errors(const ChainPath &path, const CalibrationSnapshot &snap);
std::vector<double> chain_gate_errors(const ChainPath &path, const DeviceGraph &graph);

/// Monte Carlo estimate of the chain's process fidelity under two-qubit
/// depolarizing noise: after gate g, with probability 1 - F_process(e_g) one of
/// the 15 non-identity Paulis is applied to the gate's qubits. Errors are
/// carried through the remaining CNOTs and a trial succeeds when the net Pauli
/// is the identity. Trial i draws from its own stream derived from (seed, i),
/// so the result does not depend on `threads`.
FidelityEstimate mc_chain_process_fidelity(std::span<const double> gate_errors, size_t trials, uint64_t seed,
                                           size_t threads = 1);
FidelityEstimate mc_chain_process_fidelity(const ChainPath &path, const CalibrationSnapshot &snap, size_t trials,
                                           uint64_t seed, size_t threads = 1);

/// Product of per-gate process fidelities. Ignores error cancellation, so it
/// is a lower bound on the Monte Carlo value.
FidelityEstimate analytic_chain_fidelity(std::span<const double> gate_errors);
FidelityEstimate analytic_chain_fidelity(const ChainPath &path, const CalibrationSnapshot &snap);

struct SuccessEstimate {
    double probability = 0.0;
    double std_error = 0.0;
    size_t trials = 0;
};

/// Probability that measuring every chain qubit in the computational basis at
/// the end returns the ideal bits: no X/Y component in the net gate error and
/// no readout flip. Single-qubit paths (no gates) are allowed.
SuccessEstimate end_to_end_success(const ChainPath &path, const CalibrationSnapshot &snap, size_t trials,
                                   uint64_t seed, size_t threads = 1);

std::string chain_result_to_json(const ChainPath &path, const FidelityEstimate &estimate);

}  // namespace qprune

#endif
