#pragma once

#include <atomic>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace thiim {

// Reusable barrier. Spins briefly then yields, so oversubscribed runs
// (more workers than cores) still make progress.
class SpinBarrier {
 public:
  explicit SpinBarrier(int participants) : participants_(participants) {}

  void arrive_and_wait() {
    const unsigned gen = generation_.load(std::memory_order_acquire);
    if (arrived_.fetch_add(1, std::memory_order_acq_rel) + 1 == participants_) {
      arrived_.store(0, std::memory_order_relaxed);
      generation_.fetch_add(1, std::memory_order_acq_rel);
      return;
    }
    int spins = 0;
    while (generation_.load(std::memory_order_acquire) == gen) {
      if (++spins > 1024) std::this_thread::yield();
    }
  }

 private:
  const int participants_;
  std::atomic<int> arrived_{0};
  std::atomic<unsigned> generation_{0};
};

// Process-wide worker pool. Threads are created once and reused by every
// engine run and tuner trial; pinning is left to the environment.
class WorkerPool {
 public:
  static WorkerPool& instance();

  // Runs fn(worker_id) on workers 0..n-1 and blocks until all return.
  // Worker 0 is the calling thread. Exceptions from workers are rethrown.
  void run(int n, const std::function<void(int)>& fn);

  ~WorkerPool();

 private:
  WorkerPool() = default;
  void ensure_threads(int n);
  void worker_loop(int id);

  std::mutex mu_;
  std::condition_variable cv_start_;
  std::condition_variable cv_done_;
  std::vector<std::thread> threads_;
  const std::function<void(int)>* job_ = nullptr;
  int job_width_ = 0;
  std::uint64_t job_id_ = 0;
  int remaining_ = 0;
  bool shutdown_ = false;
  std::exception_ptr first_error_;
};

}  // namespace thiim
