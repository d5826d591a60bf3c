#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace sselbp {

/// Worker count from SSELBP_THREADS; unset or 0 means hardware concurrency.
/// Throws ParameterError for a value that is not a non-negative integer.
std::size_t worker_count_from_env();

/// Calls fn(i) for every i in [0, n) on up to `workers` threads. Each index
/// runs exactly once unless an earlier index throws; the exception of the
/// lowest failing index is rethrown, so failures do not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
    workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1));
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_failure{std::numeric_limits<std::size_t>::max()};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            if (i > first_failure.load()) continue;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < first_failure.load()) {
                    first_failure = i;
                    error = std::current_exception();
                }
            }
        }
    };

    if (workers == 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
        run();
    }
    if (error) std::rethrow_exception(error);
}

} // namespace sselbp
