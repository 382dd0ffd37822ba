#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ramsum {

// Runs body(task, worker) for every task in [0, n) on up to `workers`
// threads with dynamic assignment. Callers that need deterministic results
// write into per-task slots or combine with order-independent reductions.
template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
  const unsigned threads = static_cast<unsigned>(
      std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i, 0u);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&](unsigned worker) {
    try {
      for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        body(i, worker);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

inline unsigned effective_workers(unsigned requested, std::size_t tasks) {
  return static_cast<unsigned>(
      std::min<std::size_t>(std::max(1u, requested), std::max<std::size_t>(tasks, 1)));
}

}  // namespace ramsum
