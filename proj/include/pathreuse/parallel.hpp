#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace pathreuse {

inline unsigned default_worker_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Static partition of [0, n) into at most `workers` contiguous ranges, one
/// thread each. Callers must not have order-dependent shared state; every
/// schedule then matches the single-worker reference bitwise.
template <typename Body>
void parallel_for(uint32_t n, unsigned workers, Body&& body) {
    if (n == 0) return;
    if (workers <= 1 || n == 1) {
        body(0u, n);
        return;
    }
    const unsigned used = std::min<unsigned>(workers, n);
    const uint32_t chunk = (n + used - 1) / used;
    std::vector<std::thread> threads;
    threads.reserve(used);
    for (unsigned w = 0; w < used; ++w) {
        const uint32_t begin = w * chunk;
        const uint32_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        threads.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& t : threads) t.join();
}

}  // namespace pathreuse
