#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace mdlab {

inline int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Splits [0, n) into per-worker contiguous chunks, runs `work(chunk_index,
// begin, end)` on each, then runs `merge(chunk_index)` for every chunk in
// index order on the calling thread. Results must flow through per-chunk
// state so that the merged outcome is identical for any worker count.
template <class Work, class Merge>
void parallel_chunks(std::uint64_t n, int workers, Work&& work,
                     Merge&& merge) {
  int w = resolve_workers(workers);
  std::uint64_t nchunks = static_cast<std::uint64_t>(w);
  if (nchunks > n) nchunks = n == 0 ? 1 : n;
  if (nchunks <= 1) {
    work(0, std::uint64_t{0}, n);
    merge(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nchunks);
  std::uint64_t per = n / nchunks, rem = n % nchunks, begin = 0;
  for (std::uint64_t c = 0; c < nchunks; ++c) {
    std::uint64_t len = per + (c < rem ? 1 : 0);
    pool.emplace_back(
        [&work, c, begin, len] { work(c, begin, begin + len); });
    begin += len;
  }
  for (auto& t : pool) t.join();
  for (std::uint64_t c = 0; c < nchunks; ++c) merge(c);
}

}  // namespace mdlab
