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

#ifndef QPRUNE_PAULI_H
#define QPRUNE_PAULI_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qprune {

/// Phase-free Pauli string over the positions of a chain, stored as X and Z
/// bit planes (Y = X and Z both set).
class PauliString {
   public:
    explicit PauliString(size_t num_qubits = 0);

    /// Builds from letters "IXYZ" (also accepts '_' for identity).
    static PauliString from_letters(std::string_view letters);

    size_t size() const { return num_qubits_; }
    char letter(size_t pos) const;
    void set(size_t pos, char letter);

    bool x(size_t pos) const { return (xs_[pos / 64] >> (pos % 64)) & 1; }
    bool z(size_t pos) const { return (zs_[pos / 64] >> (pos % 64)) & 1; }
    void flip_x(size_t pos) { xs_[pos / 64] ^= uint64_t{1} << (pos % 64); }
    void flip_z(size_t pos) { zs_[pos / 64] ^= uint64_t{1} << (pos % 64); }

    void clear();
    bool is_identity() const;
    /// True if some position carries X or Y, i.e. a computational-basis measurement would flip.
    bool flips_any_bit() const;

    /// Conjugation by CNOT(control, target): X_c -> X_c X_t, Z_t -> Z_c Z_t.
    void apply_cnot(size_t control, size_t target) {
        if (x(control)) {
            flip_x(target);
        }
        if (z(target)) {
            flip_z(control);
        }
    }

    /// Product with another string of the same size, dropping the phase.
    PauliString &operator*=(const PauliString &other);

    std::string str() const;
    bool operator==(const PauliString &) const = default;

   private:
    size_t num_qubits_;
    std::vector<uint64_t> xs_;
    std::vector<uint64_t> zs_;
};

/// Returns CNOT * p * CNOT with the given chain positions as control and target.
/// Throws InputError when the positions coincide or fall outside the string.
PauliString pauli_conjugate_cnot(PauliString p, size_t control_pos, size_t target_pos);

}  // namespace qprune

#endif
