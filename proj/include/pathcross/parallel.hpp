#pragma once

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace pathcross {

inline int default_threads() {
    if (const char* env = std::getenv("PATHCROSS_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs fn(i) for i in [0, n). Work items must write to disjoint slots so the
// result is independent of the thread count.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    int k = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    pool.reserve(k);
    for (int i = 0; i < k; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// Pairwise summation; deterministic and more accurate than a running sum.
inline double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double acc = 0.0;
        for (double x : xs) acc += x;
        return acc;
    }
    std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
};

inline MeanStderr mean_stderr(std::span<const double> xs) {
    MeanStderr ms;
    if (xs.empty()) return ms;
    ms.mean = pairwise_sum(xs) / static_cast<double>(xs.size());
    if (xs.size() < 2) return ms;
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double d = xs[i] - ms.mean;
        sq[i] = d * d;
    }
    double var = pairwise_sum(sq) / static_cast<double>(xs.size() - 1);
    ms.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
    return ms;
}

} // namespace pathcross
