#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace slitwave {

// Worker count resolution: explicit request > SLITWAVE_THREADS > hardware.
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SLITWAVE_THREADS")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(i) for i in [0, n) across `threads` workers on contiguous index
// blocks.  Each index must touch disjoint state; under that contract the
// result is identical for any worker count.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned nw =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads),
                                                  n > 0 ? n : 1));
  if (nw <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nw);
  const std::size_t chunk = (n + nw - 1) / nw;
  for (unsigned w = 0; w < nw; ++w) {
    const std::size_t lo = static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace slitwave
