#pragma once
// Minimal blocked parallel_for.  Thread count is capped by the
// RANKIN_LAB_THREADS environment variable; reductions stay deterministic by
// assigning fixed index blocks and combining them in order.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace rankinlab {

inline unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("RANKIN_LAB_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

// body(begin, end) runs on disjoint blocks; block boundaries are independent
// of the thread count only in the deterministic sense that each index is
// processed exactly once.
inline void parallel_for_blocked(long long begin, long long end,
                                 const std::function<void(long long, long long)>& body) {
    long long n = end - begin;
    unsigned W = worker_count();
    if (n <= 0) return;
    if (W <= 1 || n < 1024) {
        body(begin, end);
        return;
    }
    long long chunk = (n + W - 1) / W;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < W; ++w) {
        long long lo = begin + chunk * w;
        long long hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace rankinlab
