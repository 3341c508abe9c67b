#pragma once

// Barrier-style parallel helper for the engine: runs `count` independent jobs
// (optionally on separate threads), then surfaces the results — and the first
// failure by index — deterministically, regardless of thread timing.

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace autoparl {

// Invokes fn(i) for i in [0, count). With parallel=true every job runs on its
// own thread and all threads are joined before returning. Exceptions are
// captured per index and the lowest-index one is rethrown after the barrier,
// so error selection does not depend on scheduling.
inline void run_indexed_jobs(int count, bool parallel, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    if (!parallel || count == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        threads.emplace_back([&, i] {
            try {
                fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        });
    }
    for (std::thread& t : threads) t.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace autoparl
