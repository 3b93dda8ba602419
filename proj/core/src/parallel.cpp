#include "filmsim/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace filmsim {

int worker_count() {
    static const int count = [] {
        int n = static_cast<int>(std::thread::hardware_concurrency());
        if (n < 1) n = 1;
        if (const char* env = std::getenv("FILMSIM_THREADS")) {
            char* end = nullptr;
            const long cap = std::strtol(env, &end, 10);
            if (end != env && cap >= 1) n = std::min<long>(n, cap);
        }
        return n;
    }();
    return count;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    if (n <= 0) return;
    const int workers = std::min(worker_count(), n);
    if (workers == 1 || n < 4) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace filmsim
