#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace whitney {

// Chunked parallel loop with a fixed chunk size, so per-chunk results can be
// reduced in chunk order and the outcome does not depend on the thread count.
inline constexpr int kChunkSize = 1024;

inline int num_chunks(int n) { return (n + kChunkSize - 1) / kChunkSize; }

template <typename Fn>
void parallel_chunks(int n, int threads, Fn&& fn) {
  const int chunks = num_chunks(n);
  if (threads <= 1 || chunks <= 1) {
    for (int c = 0; c < chunks; ++c)
      fn(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    while (true) {
      int c = next.fetch_add(1);
      if (c >= chunks) break;
      fn(c, c * kChunkSize, std::min(n, (c + 1) * kChunkSize));
    }
  };
  std::vector<std::thread> pool;
  const int nw = std::min(threads, chunks);
  pool.reserve(nw);
  for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace whitney
