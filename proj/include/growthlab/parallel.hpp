#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace growthlab {

/// Thread cap from GROWTHLAB_THREADS; 1 when unset or invalid.
inline unsigned threads_from_env() {
  const char* v = std::getenv("GROWTHLAB_THREADS");
  if (v == nullptr) return 1;
  try {
    const long n = std::stol(v);
    return n > 0 ? static_cast<unsigned>(std::min<long>(n, 256)) : 1;
  } catch (...) {
    return 1;
  }
}

/// Calls fn(i) for i in [begin, end) on up to `threads` threads. Each index is
/// visited exactly once; the first exception thrown is rethrown.
template <class Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned threads, Fn&& fn) {
  if (end <= begin) return;
  const std::size_t count = end - begin;
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), (count + 1023) / 1024);
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace growthlab
