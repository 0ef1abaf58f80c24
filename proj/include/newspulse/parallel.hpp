#pragma once

#include <cstddef>
#include <functional>
#include <thread>

namespace newspulse {

inline int effective_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(i, worker) for i in [0, n), split into one contiguous block per
// worker. Block boundaries depend only on n and the worker count, and each i
// is touched exactly once, so any output written to slot i is deterministic.
inline void parallel_for(std::size_t n, int workers,
                         const std::function<void(std::size_t, int)>& fn) {
  workers = effective_workers(workers);
  if (n == 0) return;
  if (workers <= 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0);
    return;
  }
  auto w = static_cast<std::size_t>(workers);
  if (w > n) w = n;
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    std::size_t lo = n * t / w;
    std::size_t hi = n * (t + 1) / w;
    pool.emplace_back([lo, hi, t, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i, static_cast<int>(t));
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace newspulse
