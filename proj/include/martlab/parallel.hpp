#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace martlab {

// Runs fn(0..n-1) with static block partitioning.  Each index is processed
// exactly once and writes only to its own slot, so results never depend on
// the thread count.  threads <= 0 means hardware concurrency.
inline void parallel_for(std::size_t n, int threads,
                         const std::function<void(std::size_t)>& fn) {
  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  const std::size_t nt =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    const std::size_t lo = n * t / nt;
    const std::size_t hi = n * (t + 1) / nt;
    pool.emplace_back([&, lo, hi, t] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}

}  // namespace martlab
