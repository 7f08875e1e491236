#pragma once

// Deterministic index-chunked parallelism: work items are independent and
// pre-seeded, partial results are merged in chunk order, so the outcome does
// not depend on the thread count.

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace conjcomb {

// Runs fn(begin, end, chunkIndex) over [0, total) split into contiguous
// chunks, one per worker.  Callers merge per-chunk results in chunk order.
template <typename Fn>
void run_chunked(std::int64_t total, int threads, Fn&& fn) {
  if (threads < 1) threads = 1;
  const int workers = static_cast<int>(
      std::min<std::int64_t>(threads, std::max<std::int64_t>(total, 1)));
  if (workers == 1) {
    fn(std::int64_t{0}, total, 0);
    return;
  }
  std::vector<std::thread> pool;
  const std::int64_t step = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = w * step;
    const std::int64_t end = std::min<std::int64_t>(begin + step, total);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end, w] { fn(begin, end, w); });
  }
  for (auto& t : pool) t.join();
}

// splitmix64 of (base, index); used to derive independent per-item seeds.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace conjcomb
