#include "kirlab/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace kirlab {

int max_threads() {
    static const int cap = [] {
        int n = static_cast<int>(std::thread::hardware_concurrency());
        if (n < 1) n = 1;
        if (const char* env = std::getenv("KIRLAB_THREADS")) {
            const int req = std::atoi(env);
            if (req >= 1) n = std::min(n, req);
        }
        return n;
    }();
    return cap;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t grain) {
    const std::size_t threads = static_cast<std::size_t>(max_threads());
    if (threads <= 1 || n < grain) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t workers = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace kirlab
