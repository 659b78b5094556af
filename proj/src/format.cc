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

#include "qprune/format.h"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "qprune/errors.h"

namespace qprune {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split_commas(std::string_view text) {
    std::vector<std::string_view> out;
    size_t start = 0;
    while (true) {
        size_t comma = text.find(',', start);
        out.push_back(trim(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

}  // namespace

std::string format_real(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

double parse_probability(std::string_view text) {
    std::string_view s = trim(text);
    bool percent = false;
    if (!s.empty() && s.back() == '%') {
        percent = true;
        s.remove_suffix(1);
        s = trim(s);
    }
    double value = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (s.empty() || ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value)) {
        throw InputError("not a probability: '" + std::string(text) + "'");
    }
    if (percent) {
        value /= 100.0;
    }
    if (value < 0.0 || value > 1.0) {
        throw InputError("probability outside [0,1]: '" + std::string(text) + "'");
    }
    return value;
}

std::vector<double> parse_probability_list(std::string_view text) {
    std::vector<double> out;
    for (auto item : split_commas(text)) {
        out.push_back(parse_probability(item));
    }
    return out;
}

std::vector<size_t> parse_size_list(std::string_view text) {
    std::vector<size_t> out;
    for (auto item : split_commas(text)) {
        size_t value = 0;
        auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
            throw InputError("not a non-negative integer: '" + std::string(item) + "'");
        }
        out.push_back(value);
    }
    return out;
}

}  // namespace qprune
