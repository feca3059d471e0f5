#include "thiim/bandwidth.hpp"

#include <algorithm>
#include <chrono>
#include <vector>

#include "thiim/grid.hpp"
#include "thiim/worker_pool.hpp"

namespace thiim {

double measure_bandwidth(int threads, std::uint64_t cache_bytes) {
  if (threads < 1) throw ConfigError("threads must be >= 1");
  const std::uint64_t target_bytes = std::max<std::uint64_t>(4 * cache_bytes, 64u << 20);
  const std::size_t n = target_bytes / (3 * sizeof(double));
  std::vector<double> a(n, 0.0), b(n, 1.0), c(n, 2.0);
  const double s = 3.0;

  double best = 0.0;
  SpinBarrier barrier(threads);
  for (int sweep = 0; sweep < 5; ++sweep) {
    std::chrono::steady_clock::time_point t0;
    WorkerPool::instance().run(threads, [&](int w) {
      const std::size_t lo = n * w / threads, hi = n * (w + 1) / threads;
      barrier.arrive_and_wait();
      if (w == 0) t0 = std::chrono::steady_clock::now();
      barrier.arrive_and_wait();
      double* __restrict pa = a.data();
      const double* __restrict pb = b.data();
      const double* __restrict pc = c.data();
      for (std::size_t i = lo; i < hi; ++i) pa[i] = pb[i] + s * pc[i];
      barrier.arrive_and_wait();
    });
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // 2 loads + 1 store, plus the write-allocate read of a.
    const double bytes = 4.0 * double(n) * sizeof(double);
    best = std::max(best, bytes / secs / 1e9);
  }
  return best;
}

}  // namespace thiim
