/*!
  \file parallel.hpp
  \brief Deterministic index-sharded worker pool.

  Jobs are addressed by index and carry their own derived seeds, so
  scheduling never influences results; callers collect outputs into
  index-ordered storage and merge in order.
*/

#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace monotest {

/*!
  \brief Runs fn(i) for i in [0, count) on a pool of worker threads.
         Rethrows the first worker exception after joining.
*/
inline void parallel_for(std::uint64_t count, const std::function<void(std::uint64_t)>& fn,
                         unsigned num_threads = 0) {
  if (count == 0) return;
  if (num_threads == 0) num_threads = std::max(1u, std::thread::hardware_concurrency());
  if (num_threads == 1 || count == 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(num_threads);
  for (unsigned w = 0; w < num_threads; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          bool expected = false;
          if (failed.compare_exchange_strong(expected, true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace monotest
