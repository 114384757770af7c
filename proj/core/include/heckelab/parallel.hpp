#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "heckelab/numeric.hpp"

namespace heckelab {

// Global worker count used when callers pass threads = 0.
int default_thread_count();
void set_default_thread_count(int n);

namespace detail {
inline std::atomic<int>& thread_count_slot() {
    static std::atomic<int> count{0};
    return count;
}
}  // namespace detail

inline int default_thread_count() {
    int n = detail::thread_count_slot().load();
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

inline void set_default_thread_count(int n) {
    detail::thread_count_slot().store(n > 0 ? n : 0);
}

// Runs fn(block_index, lo, hi) over [begin, end) split into fixed-size
// blocks. The block size is independent of the worker count, and workers
// claim blocks from a shared counter, so any per-block outputs land in
// the same slots regardless of how many threads run. Combining those
// outputs in block order is what keeps reductions byte-stable.
template <class Fn>
void parallel_blocks(std::int64_t begin, std::int64_t end, std::int64_t block_size,
                     int threads, Fn&& fn) {
    if (end <= begin) return;
    if (block_size <= 0) block_size = 1 << 16;
    std::int64_t n_blocks = (end - begin + block_size - 1) / block_size;
    if (threads <= 0) threads = default_thread_count();
    if (threads > n_blocks) threads = static_cast<int>(n_blocks);

    if (threads <= 1) {
        for (std::int64_t b = 0; b < n_blocks; ++b) {
            std::int64_t lo = begin + b * block_size;
            std::int64_t hi = std::min(end, lo + block_size);
            fn(b, lo, hi);
        }
        return;
    }

    std::atomic<std::int64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::int64_t b = next.fetch_add(1);
            if (b >= n_blocks) break;
            std::int64_t lo = begin + b * block_size;
            std::int64_t hi = std::min(end, lo + block_size);
            fn(b, lo, hi);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

// Deterministic parallel sum of term(i) over [begin, end): per-block
// compensated sums combined in block order.
template <class Term>
double parallel_sum(std::int64_t begin, std::int64_t end, int threads, Term&& term) {
    constexpr std::int64_t kBlock = 1 << 16;
    if (end <= begin) return 0.0;
    std::int64_t n_blocks = (end - begin + kBlock - 1) / kBlock;
    std::vector<CompensatedSum> partial(static_cast<std::size_t>(n_blocks));
    parallel_blocks(begin, end, kBlock, threads,
                    [&](std::int64_t b, std::int64_t lo, std::int64_t hi) {
                        CompensatedSum s;
                        for (std::int64_t i = lo; i < hi; ++i) s.add(term(i));
                        partial[static_cast<std::size_t>(b)] = s;
                    });
    CompensatedSum total;
    for (const auto& s : partial) total.add(s);
    return total.value();
}

}  // namespace heckelab
