//
// chemaug - data augmentation toolkit for chemical structures
// SPDX-License-Identifier: Apache-2.0
//

#ifndef CHEMAUG_SRC_PARALLEL_H_
#define CHEMAUG_SRC_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "chemaug/pipeline.h"

namespace chemaug::internal {

// Runs fn(i) for i in [0, n) on up to worker_count() threads. Work items
// must write only to their own slot. If several items throw, the one with
// the lowest index is rethrown so errors do not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t n, Fn &&fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }

  std::atomic<std::size_t> next { 0 };
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;

  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n)
        return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t)
    pool.emplace_back(body);
  body();
  for (auto &th: pool)
    th.join();
  if (failure)
    std::rethrow_exception(failure);
}

}  // namespace chemaug::internal

#endif  // CHEMAUG_SRC_PARALLEL_H_
