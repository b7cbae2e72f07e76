#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace fbspde {

// Deterministic block parallelism: work is cut into fixed-size blocks
// (independent of the thread count), each block writes only its own slots,
// and any reduction is finished sequentially in block order by the caller.
// Results are therefore bit-identical for any thread count.

namespace detail {
inline int& thread_setting() {
  static int n = 1;
  return n;
}
}  // namespace detail

inline int max_threads() { return detail::thread_setting(); }
inline void set_max_threads(int n) { detail::thread_setting() = n < 1 ? 1 : n; }

/// Calls fn(block_index, begin, end) for every block of `block` items.
template <typename Fn>
void parallel_blocks(std::size_t n_items, std::size_t block, Fn&& fn) {
  if (n_items == 0) return;
  if (block == 0) block = 1;
  const std::size_t n_blocks = (n_items + block - 1) / block;
  const int threads = static_cast<int>(
      std::min(static_cast<std::size_t>(max_threads()), n_blocks));
  if (threads <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b)
      fn(b, b * block, std::min(n_items, (b + 1) * block));
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      fn(b, b * block, std::min(n_items, (b + 1) * block));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace fbspde
