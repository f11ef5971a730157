#pragma once

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace quotatope {

// Worker count: hardware concurrency, capped by QUOTATOPE_THREADS when set.
inline unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("QUOTATOPE_THREADS")) {
        char* end = nullptr;
        long cap = std::strtol(env, &end, 10);
        if (end != env && cap >= 1 && static_cast<unsigned long>(cap) < hw)
            hw = static_cast<unsigned>(cap);
    }
    return hw;
}

// Contiguous-block parallel loop.  Results must be written to per-index slots
// (or otherwise merged associatively) so the outcome is independent of the
// worker count.
template <typename F>
void parallel_for(std::size_t n, F&& body) {
    unsigned workers = thread_budget();
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    if (workers > n) workers = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr first_error = nullptr;
    std::mutex err_mx;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = n * w / workers, hi = n * (w + 1) / workers;
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mx);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace quotatope
