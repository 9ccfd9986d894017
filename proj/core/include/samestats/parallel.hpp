#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace samestats {

/// Resolves a requested worker count: 0 means "hardware concurrency".
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs body(worker, index) for every index in [0, count) on up to `threads`
/// workers. Indices are handed out in contiguous chunks; callers that need a
/// deterministic result must make each index's output independent of which
/// worker ran it. The first exception thrown by any body is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body, std::size_t chunk = 64) {
  threads = std::min<unsigned>(resolve_threads(threads),
                               static_cast<unsigned>(std::max<std::size_t>(1, count)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(0U, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (;;) {
          const std::size_t begin = next.fetch_add(chunk);
          if (begin >= count) break;
          const std::size_t end = std::min(count, begin + chunk);
          for (std::size_t i = begin; i < end; ++i) body(w, i);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace samestats
