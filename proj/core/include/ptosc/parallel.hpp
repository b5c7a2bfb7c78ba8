#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace ptosc {

// Runs fn(i) for i in [0, count) on up to thread_count workers. Work items
// must be independent; each writes only its own output slot, so results do
// not depend on scheduling. thread_count <= 0 selects the hardware count.
inline void parallel_for(std::size_t count, int thread_count,
                         const std::function<void(std::size_t)>& fn) {
  if (thread_count <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    thread_count = hw > 0 ? static_cast<int>(hw) : 1;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_count), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count, std::memory_order_relaxed);  // drain remaining work
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ptosc
