#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace packlab {

/// Worker count: PACKING_LAB_THREADS if set to a positive integer, else the
/// hardware concurrency. Affects speed only; every result is partition-independent.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("PACKING_LAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs body(worker, begin, end) over a static partition of [0, n).
template <typename Body>
void parallel_chunks(std::size_t n, std::size_t workers, Body&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, n));
  if (workers == 1) {
    body(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace packlab
