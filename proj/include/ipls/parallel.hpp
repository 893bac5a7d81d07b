#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ipls {

// Worker cap: hardware concurrency, optionally limited by IPLS_THREADS.
inline int max_threads() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("IPLS_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

namespace detail {
inline bool& in_worker() {
    thread_local bool flag = false;
    return flag;
}
}  // namespace detail

// Static block partition of [begin, end); f(i) must only write state owned by
// index i so results are deterministic regardless of thread count. Nested
// calls run serially on the calling worker.
template <class F>
void parallel_for(int begin, int end, F&& f) {
    const int count = end - begin;
    if (count <= 0) return;
    const int workers = detail::in_worker() ? 1 : std::min(max_threads(), count);
    if (workers <= 1) {
        for (int i = begin; i < end; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex err_mutex;
    const int chunk = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            detail::in_worker() = true;
            try {
                for (int i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ipls
