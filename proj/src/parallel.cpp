#include "mpcd/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace mpcd {

namespace {
int g_threads = 1;
}

void set_thread_count(int threads) { g_threads = std::max(1, threads); }

int thread_count() { return g_threads; }

void parallel_blocks(int64_t n,
                     const std::function<void(int64_t, int64_t)>& fn) {
  if (n <= 0) return;
  int workers = static_cast<int>(std::min<int64_t>(g_threads, n));
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    int64_t begin = n * w / workers;
    int64_t end = n * (w + 1) / workers;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

void parallel_for(int64_t n, const std::function<void(int64_t)>& fn) {
  parallel_blocks(n, [&fn](int64_t b, int64_t e) {
    for (int64_t i = b; i < e; ++i) fn(i);
  });
}

}  // namespace mpcd
