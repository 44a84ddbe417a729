#pragma once

#include <cstddef>
#include <functional>

namespace czhardy {

// Worker count: CZHARDY_THREADS if set (clamped to [1, hardware]), else the
// hardware concurrency.
unsigned thread_budget();

// Runs fn(lo, hi, block_index) over [0, n) split into fixed-size blocks.
// Block boundaries depend only on n, never on the thread count, so per-block
// partial results folded in block order give identical output at any budget.
void parallel_blocks(std::size_t n, std::size_t block_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

std::size_t block_count(std::size_t n, std::size_t block_size);

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace czhardy
