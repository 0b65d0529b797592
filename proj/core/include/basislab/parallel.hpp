#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace basislab {

// Deterministic chunked parallel map: the index range is cut into fixed-size
// chunks independent of the worker count, workers pull chunks from a shared
// counter, and per-chunk results land in slots that the caller reduces in
// chunk order.  Output is therefore identical at any parallelism degree.
inline constexpr std::size_t kParallelChunk = 4096;

template <class Body>
void parallel_chunks(std::size_t n, int workers, Body&& body) {
    const std::size_t nchunks = (n + kParallelChunk - 1) / kParallelChunk;
    if (workers <= 1 || nchunks <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) {
            std::size_t lo = c * kParallelChunk;
            std::size_t hi = std::min(n, lo + kParallelChunk);
            body(c, lo, hi);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= nchunks) return;
            std::size_t lo = c * kParallelChunk;
            std::size_t hi = std::min(n, lo + kParallelChunk);
            body(c, lo, hi);
        }
    };
    std::vector<std::thread> pool;
    int nt = std::min<int>(workers, static_cast<int>(nchunks));
    pool.reserve(static_cast<std::size_t>(nt));
    for (int i = 0; i < nt; ++i) pool.emplace_back(run);
    for (auto& t : pool) t.join();
}

inline std::size_t parallel_chunk_count(std::size_t n) {
    return (n + kParallelChunk - 1) / kParallelChunk;
}

} // namespace basislab
