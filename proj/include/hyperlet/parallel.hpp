#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hyperlet {

/// Resolves a thread-count request: <=0 means "use the hardware concurrency".
inline int effective_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, n). Work items must write only to their own output
/// slots; outputs are then independent of the schedule. The first exception
/// thrown by any worker is rethrown on the calling thread.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    int t = effective_threads(threads);
    if (t <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    if (static_cast<std::size_t>(t) > n) t = static_cast<int>(n);

    std::exception_ptr first_error;
    std::mutex error_mu;
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(t));
    for (int w = 0; w < t; ++w) {
        workers.emplace_back([&, w]() {
            try {
                // Strided assignment balances uneven per-index costs.
                for (std::size_t i = static_cast<std::size_t>(w); i < n; i += static_cast<std::size_t>(t))
                    fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : workers) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hyperlet
