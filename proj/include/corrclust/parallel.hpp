#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace corrclust {

// Worker cap: CORRCLUST_THREADS when set, hardware concurrency otherwise.
inline int worker_cap() {
  if (const char* env = std::getenv("CORRCLUST_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(0..count-1) across workers. Results must be written to
// index-addressed slots so the outcome is independent of scheduling.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  int workers = std::min(worker_cap(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&next, count, &fn] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace corrclust
