#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace bmrates {

inline unsigned default_workers() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

// Runs body(begin, end) over fixed-size chunks of [0, count). Chunk
// boundaries depend only on chunk_size, never on the worker count, and each
// chunk's partial result lands in a slot indexed by chunk id. The caller
// reduces the returned partials in index order, so the summed result is
// bit-identical for any number of workers.
template <typename Body>
std::vector<double> parallel_chunk_map(std::size_t count, std::size_t chunk_size,
                                       unsigned workers, Body&& body) {
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t n_chunks = count == 0 ? 0 : (count + chunk_size - 1) / chunk_size;
    std::vector<double> partials(n_chunks, 0.0);
    if (n_chunks == 0) return partials;
    if (workers == 0) workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n_chunks));

    if (workers <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            std::size_t b = c * chunk_size;
            std::size_t e = std::min(count, b + chunk_size);
            partials[c] = body(b, e);
        }
        return partials;
    }

    std::atomic<std::size_t> next{0};
    auto run = [&]() {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) break;
            std::size_t b = c * chunk_size;
            std::size_t e = std::min(count, b + chunk_size);
            partials[c] = body(b, e);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    return partials;
}

// Chunked parallel sum with index-ordered reduction.
template <typename Body>
double parallel_chunk_sum(std::size_t count, std::size_t chunk_size,
                          unsigned workers, Body&& body) {
    auto partials = parallel_chunk_map(count, chunk_size, workers, body);
    double total = 0.0;
    for (double p : partials) total += p;
    return total;
}

// Runs body(i) for i in [0, count) with no return value (e.g. filling
// disjoint slots of a preallocated buffer).
template <typename Body>
void parallel_for_each(std::size_t count, std::size_t chunk_size,
                       unsigned workers, Body&& body) {
    parallel_chunk_map(count, chunk_size, workers,
                       [&](std::size_t b, std::size_t e) {
                           for (std::size_t i = b; i < e; ++i) body(i);
                           return 0.0;
                       });
}

}  // namespace bmrates
