#pragma once

#include <cstdint>
#include <functional>

namespace mpcd {

// Worker count for candidate scans and per-machine evaluation. Results are
// always written to index-addressed slots and reduced in index order, so the
// outcome is identical for any count.
void set_thread_count(int threads);
int thread_count();

// Runs fn(i) for i in [0, n) split into static contiguous blocks.
void parallel_for(int64_t n, const std::function<void(int64_t)>& fn);

// Runs fn(block_begin, block_end) over a static partition of [0, n).
void parallel_blocks(int64_t n,
                     const std::function<void(int64_t, int64_t)>& fn);

}  // namespace mpcd
