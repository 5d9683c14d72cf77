#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace wigner {

inline unsigned worker_count() {
    if (const char* env = std::getenv("WIGNER_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, count). Each index writes to its own slot in the
/// caller's output, and reductions happen afterwards in index order, so
/// results do not depend on the worker count.
template <typename Fn>
void parallel_for(long count, Fn&& fn, unsigned workers = 0) {
    if (workers == 0) workers = worker_count();
    if (count <= 0) return;
    if (workers <= 1 || count == 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    if (static_cast<long>(workers) > count) workers = static_cast<unsigned>(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (long i = static_cast<long>(w); i < count; i += static_cast<long>(workers)) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace wigner
