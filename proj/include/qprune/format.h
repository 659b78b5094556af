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

#ifndef QPRUNE_FORMAT_H
#define QPRUNE_FORMAT_H

#include <string>
#include <string_view>
#include <vector>

namespace qprune {

/// Renders a real number for CSV output ("%.12g"). Locale independent.
std::string format_real(double value);

/// Parses a probability written either as a fraction ("0.016") or a percentage
/// ("1.6%"). Throws InputError on junk or values outside [0, 1].
double parse_probability(std::string_view text);

/// Comma-separated list of probabilities, each as accepted by parse_probability.
std::vector<double> parse_probability_list(std::string_view text);

/// Comma-separated list of non-negative integers.
std::vector<size_t> parse_size_list(std::string_view text);

}  // namespace qprune

#endif
