#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace frobenius {

/// Runs fn(i) for i in [0, n) on `workers` threads. Items are handed out in
/// chunks from a shared counter; callers write results into slot i, so the
/// outcome does not depend on scheduling. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn, std::size_t chunk = 16) {
    workers = std::max(1u, workers);
    if (workers == 1 || n <= chunk) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_guard;
    auto body = [&] {
        try {
            for (;;) {
                const std::size_t start = next.fetch_add(chunk);
                if (start >= n) break;
                const std::size_t stop = std::min(n, start + chunk);
                for (std::size_t i = start; i < stop; ++i) fn(i);
            }
        } catch (...) {
            std::lock_guard lock(error_guard);
            if (!error) error = std::current_exception();
            next.store(n);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace frobenius
