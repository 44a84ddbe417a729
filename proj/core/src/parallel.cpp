#include "czhardy/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace czhardy {

unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CZHARDY_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && static_cast<unsigned>(v) < hw) return static_cast<unsigned>(v);
        if (v >= 1) return hw;
        return 1;
    }
    return hw;
}

std::size_t block_count(std::size_t n, std::size_t block_size) {
    return block_size == 0 ? 0 : (n + block_size - 1) / block_size;
}

void parallel_blocks(std::size_t n, std::size_t block_size,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    std::size_t blocks = block_count(n, block_size);
    unsigned budget = thread_budget();
    if (budget <= 1 || blocks <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) {
            std::size_t lo = b * block_size;
            fn(lo, std::min(n, lo + block_size), b);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
            std::size_t lo = b * block_size;
            fn(lo, std::min(n, lo + block_size), b);
        }
    };
    std::vector<std::thread> pool;
    unsigned spawn = std::min<std::size_t>(budget, blocks);
    pool.reserve(spawn);
    for (unsigned i = 0; i < spawn; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    parallel_blocks(n, 256, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
}

}  // namespace czhardy
