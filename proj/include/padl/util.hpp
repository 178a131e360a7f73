#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace padl {

// Deterministic parallel map: results land in slot order no matter the
// schedule.  workers <= 1 degrades to a plain loop.
inline void parallel_for(int n, int workers, const std::function<void(int)>& body) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    int k = std::min(workers, n);
    for (int w = 0; w < k; ++w)
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    for (auto& t : pool) t.join();
}

} // namespace padl
