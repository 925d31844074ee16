#pragma once

// Static-chunk parallel loop over element indices. Callers keep results
// deterministic by writing per-index slots and reducing serially afterward.

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cpg {

namespace detail {
inline std::atomic<int> g_threads{0};  // 0 = pick from hardware
}

inline void set_num_threads(int n) { detail::g_threads.store(n < 1 ? 1 : n); }

inline int num_threads() {
    const int n = detail::g_threads.load();
    if (n > 0) return n;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw > 8 ? 8 : hw);
}

inline void parallel_for(int n, const std::function<void(int)>& body) {
    const int threads = std::min(num_threads(), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    auto run = [&](int t) {
        const int lo = static_cast<int>(static_cast<long long>(n) * t / threads);
        const int hi = static_cast<int>(static_cast<long long>(n) * (t + 1) / threads);
        try {
            for (int i = lo; i < hi; ++i) body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!failed.exchange(true)) first_error = std::current_exception();
        }
    };
    pool.reserve(threads - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(run, t);
    run(0);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace cpg
