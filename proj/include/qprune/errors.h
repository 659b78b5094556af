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

#ifndef QPRUNE_ERRORS_H
#define QPRUNE_ERRORS_H

#include <stdexcept>
#include <string>

namespace qprune {

/// Malformed or invalid input (documents, flags, specs). Maps to exit code 2.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Pruning left no qubit standing. Maps to exit code 3.
struct EmptyResultError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested chain cannot be realised on the available hardware. Maps to exit code 3.
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The self-avoiding walk exhausted its restart budget.
struct PathNotFoundError : InfeasibleError {
    using InfeasibleError::InfeasibleError;
};

}  // namespace qprune

#endif
