#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kforest {

/// Number of workers for a request of `threads` (0 = hardware concurrency).
inline int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs body(task) for task in [0, tasks) on up to `threads` workers and
/// returns the per-task results in task order, so any later fold is
/// independent of scheduling. The first exception thrown by a task is
/// rethrown after all workers stop.
template <class Result, class Body>
std::vector<Result> parallel_map(std::int64_t tasks, int threads, Body&& body) {
  std::vector<Result> results(static_cast<std::size_t>(std::max<std::int64_t>(tasks, 0)));
  const int workers = static_cast<int>(std::min<std::int64_t>(resolve_threads(threads), std::max<std::int64_t>(tasks, 1)));
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&]() {
    while (true) {
      const std::int64_t t = next.fetch_add(1);
      if (t >= tasks) return;
      try {
        results[static_cast<std::size_t>(t)] = body(t);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(tasks);
        return;
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace kforest
