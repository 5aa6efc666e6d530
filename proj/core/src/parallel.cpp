#include "hlslab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace hlslab {

namespace {
std::atomic<int> g_override{0};

int default_workers() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  if (const char* env = std::getenv("HLSLAB_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) n = std::min(n, cap);
  }
  return n;
}
}  // namespace

int worker_count() {
  const int ov = g_override.load();
  return ov > 0 ? ov : default_workers();
}

void set_worker_count(int n) { g_override.store(n > 0 ? n : 0); }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const int workers = std::min<std::size_t>(worker_count(), count) > 0
                          ? static_cast<int>(std::min<std::size_t>(worker_count(), count))
                          : 1;
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 32) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace hlslab
