#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace outline_energy {

/// Worker count honoring the OUTLINE_ENERGY_THREADS cap (0 or unset = auto).
inline unsigned thread_count()
{
    unsigned cap = 0;
    if (const char* env = std::getenv("OUTLINE_ENERGY_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0')
            cap = static_cast<unsigned>(v);
    }
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    return cap == 0 ? hw : std::min(cap, hw);
}

/// Runs fn(i) for i in [0, n). Work is split into contiguous chunks so callers
/// that write to slot i of a preallocated buffer get output independent of the
/// worker count. The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn)
{
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(thread_count(), n == 0 ? 1 : n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::mutex err_mutex;
    std::exception_ptr first_error;
    auto run_chunk = [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t i = begin; i < end; ++i)
                fn(i);
        } catch (...) {
            const std::scoped_lock lock(err_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
    };

    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * chunk);
        const std::size_t end = std::min(n, begin + chunk);
        if (begin < end)
            pool.emplace_back(run_chunk, begin, end);
    }
    run_chunk(0, std::min(n, chunk));
    for (auto& t : pool)
        t.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace outline_energy
