#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

#include "errors.hpp"

namespace hhlab {

// Worker count for fan-out loops: the explicit request, overridden by the
// HHLAB_WORKERS environment variable when set.
inline int resolve_workers(int requested)
{
    if (const char* env = std::getenv("HHLAB_WORKERS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || v < 1 || v > 256)
            throw InvalidSpec("HHLAB_WORKERS must be an integer in [1, 256]");
        return static_cast<int>(v);
    }
    return requested < 1 ? 1 : requested;
}

// Runs fn(i) for every i < count on up to `workers` threads.  Callers must
// write results into slots disjoint per i so the outcome is independent of
// the schedule; the first exception thrown by any worker is rethrown.
inline void parallel_for_index(int workers, size_t count,
                               const std::function<void(size_t)>& fn)
{
    if (workers <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto work = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };
    size_t nthreads = static_cast<size_t>(workers) < count ? static_cast<size_t>(workers) : count;
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace hhlab
