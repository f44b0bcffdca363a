#include "stratlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace stratlab {

namespace {
std::atomic<int> g_workers{0};

int env_workers() {
  const char* s = std::getenv("STRATLAB_WORKERS");
  if (!s) return 1;
  int n = std::atoi(s);
  return n >= 1 ? n : 1;
}
}  // namespace

int worker_count() {
  int n = g_workers.load(std::memory_order_relaxed);
  return n >= 1 ? n : env_workers();
}

void set_worker_count(int n) { g_workers.store(n >= 1 ? n : 0, std::memory_order_relaxed); }

void parallel_for_ranges(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  const int workers = worker_count();
  if (n == 0) return;
  if (workers <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(k);
  const std::size_t chunk = (n + k - 1) / k;
  for (std::size_t w = 0; w < k; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  parallel_for_ranges(n, [&fn](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) fn(i);
  });
}

}  // namespace stratlab
