#pragma once

// Deterministic parallel map: static index blocks, results written to
// preassigned slots, no shared mutable state. ZETAFLOW_THREADS caps the
// worker count.

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace zetaflow::parallel {

inline unsigned env_thread_cap() {
    const char* v = std::getenv("ZETAFLOW_THREADS");
    if (!v) return 0;
    const long n = std::strtol(v, nullptr, 10);
    return n > 0 ? unsigned(n) : 0;
}

/// requested == 0 means "auto" (hardware concurrency); the environment cap
/// applies either way.
inline unsigned resolve_threads(unsigned requested) {
    unsigned n = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const unsigned cap = env_thread_cap(); cap > 0) n = std::min(n, cap);
    return std::max(1u, n);
}

template <typename Body>
void parallel_for(long count, unsigned threads, Body&& body) {
    const unsigned k = std::min<unsigned>(resolve_threads(threads),
                                          unsigned(std::max<long>(1, count)));
    if (k <= 1) {
        for (long i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(k);
    for (unsigned w = 0; w < k; ++w) {
        const long lo = count * long(w) / long(k);
        const long hi = count * long(w + 1) / long(k);
        pool.emplace_back([lo, hi, &body] {
            for (long i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace zetaflow::parallel
