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

#ifndef QPRUNE_PARALLEL_H
#define QPRUNE_PARALLEL_H

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qprune {

/// Resolves a requested worker count; 0 means "use the hardware".
inline size_t resolve_threads(size_t requested) {
    if (requested != 0) {
        return requested;
    }
    return std::max<size_t>(1, std::thread::hardware_concurrency());
}

/// Calls body(i) for every i in [0, n) using up to `threads` workers. Work is
/// split into contiguous blocks, so any body that writes only to slot i gives
/// results independent of the worker count. The first exception thrown by any
/// worker is rethrown on the calling thread.
template <typename Body>
void parallel_for(size_t n, size_t threads, Body &&body) {
    threads = std::min(resolve_threads(threads), n);
    if (threads <= 1) {
        for (size_t i = 0; i < n; i++) {
            body(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (size_t w = 0; w < threads; w++) {
        size_t begin = n * w / threads;
        size_t end = n * (w + 1) / threads;
        workers.emplace_back([&, begin, end] {
            try {
                for (size_t i = begin; i < end; i++) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (auto &t : workers) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace qprune

#endif
