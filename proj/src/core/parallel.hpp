#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace herc {

// Runs fn(begin, end) over contiguous chunks of [0, n). Each index is owned by
// exactly one chunk, so results are identical for any thread count as long as
// fn writes only to outputs indexed by its range.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  if (n == 0) return;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  auto nthreads = static_cast<std::size_t>(threads);
  if (nthreads > n) nthreads = n;
  if (nthreads == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::size_t chunk = (n + nthreads - 1) / nthreads;
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) {
    std::size_t begin = t * chunk;
    std::size_t end = begin + chunk < n ? begin + chunk : n;
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace herc
