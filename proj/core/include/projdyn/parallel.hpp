#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace projdyn {

/// Runs fn(block) for every block in [0, n_blocks) on up to `threads` workers.
/// The partition into blocks is fixed by the caller, so any reduction done in
/// block order is independent of the thread count. If several blocks throw,
/// the exception of the lowest block index is rethrown.
template <class Fn>
void for_each_block(std::size_t n_blocks, int threads, Fn&& fn) {
    if (n_blocks == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(n_blocks, static_cast<std::size_t>(std::max(threads, 1)));
    std::vector<std::exception_ptr> errors(n_blocks);
    if (workers == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) {
            try {
                fn(b);
            } catch (...) {
                errors[b] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t b = next++; b < n_blocks; b = next++) {
                        try {
                            fn(b);
                        } catch (...) {
                            errors[b] = std::current_exception();
                        }
                    }
                });
            }
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

/// Number of fixed-size blocks covering n items.
constexpr std::size_t block_count(std::size_t n, std::size_t block) { return (n + block - 1) / block; }

}  // namespace projdyn
