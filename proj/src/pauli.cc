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

#include "qprune/pauli.h"

#include <algorithm>

#include "qprune/errors.h"

namespace qprune {

PauliString::PauliString(size_t num_qubits)
    : num_qubits_(num_qubits), xs_((num_qubits + 63) / 64, 0), zs_((num_qubits + 63) / 64, 0) {}

PauliString PauliString::from_letters(std::string_view letters) {
    PauliString p(letters.size());
    for (size_t i = 0; i < letters.size(); i++) {
        p.set(i, letters[i]);
    }
    return p;
}

char PauliString::letter(size_t pos) const {
    static constexpr char kLetters[] = {'I', 'X', 'Z', 'Y'};
    return kLetters[static_cast<int>(x(pos)) | (static_cast<int>(z(pos)) << 1)];
}

void PauliString::set(size_t pos, char letter) {
    bool want_x = false;
    bool want_z = false;
    switch (letter) {
        case 'I':
        case '_':
            break;
        case 'X':
            want_x = true;
            break;
        case 'Y':
            want_x = want_z = true;
            break;
        case 'Z':
            want_z = true;
            break;
        default:
            throw InputError(std::string("not a Pauli letter: '") + letter + "'");
    }
    if (x(pos) != want_x) {
        flip_x(pos);
    }
    if (z(pos) != want_z) {
        flip_z(pos);
    }
}

void PauliString::clear() {
    std::fill(xs_.begin(), xs_.end(), 0);
    std::fill(zs_.begin(), zs_.end(), 0);
}

bool PauliString::is_identity() const {
    return std::all_of(xs_.begin(), xs_.end(), [](uint64_t w) { return w == 0; }) &&
           std::all_of(zs_.begin(), zs_.end(), [](uint64_t w) { return w == 0; });
}

bool PauliString::flips_any_bit() const {
    return std::any_of(xs_.begin(), xs_.end(), [](uint64_t w) { return w != 0; });
}

PauliString &PauliString::operator*=(const PauliString &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw InputError("Pauli string size mismatch");
    }
    for (size_t w = 0; w < xs_.size(); w++) {
        xs_[w] ^= other.xs_[w];
        zs_[w] ^= other.zs_[w];
    }
    return *this;
}

std::string PauliString::str() const {
    std::string out(num_qubits_, 'I');
    for (size_t i = 0; i < num_qubits_; i++) {
        out[i] = letter(i);
    }
    return out;
}

PauliString pauli_conjugate_cnot(PauliString p, size_t control_pos, size_t target_pos) {
    if (control_pos == target_pos || control_pos >= p.size() || target_pos >= p.size()) {
        throw InputError("CNOT positions must be distinct and inside the Pauli string");
    }
    p.apply_cnot(control_pos, target_pos);
    return p;
}

}  // namespace qprune
