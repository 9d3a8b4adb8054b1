#include "tmhd/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tmhd {

int thread_cap() {
    static const int cap = [] {
        const char* env = std::getenv("TMHD_THREADS");
        int v = 0;
        if (env != nullptr) v = std::atoi(env);
        if (v <= 0) v = static_cast<int>(std::thread::hardware_concurrency());
        return std::max(1, v);
    }();
    return cap;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
    const int threads = std::min<int>(thread_cap(), 8);
    // Below this size thread spawn overhead dominates; desk-scale grids
    // (<= 32^3 pointwise loops) run serially.
    if (threads <= 1 || n < 65536) {
        body(0, n);
        return;
    }
    const std::size_t chunk = (n + threads - 1) / threads;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        const std::size_t lo = std::min(n, t * chunk);
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tmhd
