#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace gsav {

// Runs fn(i) for i in [0, count) over `workers` threads, statically striped.
// Tasks must write to disjoint state; callers needing reductions collect
// per-task buffers and merge them in fixed task order afterwards, which makes
// results identical for any worker count.
inline void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  int n = std::min(workers, count);
  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(n));
  for (int w = 0; w < n; ++w) {
    threads.emplace_back([&, w]() {
      for (int i = w; i < count; i += n) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace gsav
