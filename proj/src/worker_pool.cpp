#include "thiim/worker_pool.hpp"

#include <stdexcept>

namespace thiim {

WorkerPool& WorkerPool::instance() {
  static WorkerPool pool;
  return pool;
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard<std::mutex> g(mu_);
    shutdown_ = true;
  }
  cv_start_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::ensure_threads(int n) {
  // Worker 0 is the caller; ids 1..n-1 live in the pool.
  while (int(threads_.size()) < n - 1) {
    const int id = int(threads_.size()) + 1;
    threads_.emplace_back([this, id] { worker_loop(id); });
  }
}

void WorkerPool::worker_loop(int id) {
  std::uint64_t seen = 0;
  for (;;) {
    const std::function<void(int)>* job = nullptr;
    {
      std::unique_lock<std::mutex> lk(mu_);
      cv_start_.wait(lk, [&] {
        return shutdown_ || (job_id_ != seen && id < job_width_);
      });
      if (shutdown_) return;
      seen = job_id_;
      job = job_;
    }
    std::exception_ptr err;
    try {
      (*job)(id);
    } catch (...) {
      err = std::current_exception();
    }
    {
      std::lock_guard<std::mutex> g(mu_);
      if (err && !first_error_) first_error_ = err;
      if (--remaining_ == 0) cv_done_.notify_all();
    }
  }
}

void WorkerPool::run(int n, const std::function<void(int)>& fn) {
  if (n <= 0) throw std::invalid_argument("worker count must be >= 1");
  if (n == 1) {
    fn(0);
    return;
  }
  {
    std::lock_guard<std::mutex> g(mu_);
    ensure_threads(n);
    job_ = &fn;
    job_width_ = n;
    remaining_ = n - 1;
    first_error_ = nullptr;
    ++job_id_;
  }
  cv_start_.notify_all();

  std::exception_ptr caller_err;
  try {
    fn(0);
  } catch (...) {
    caller_err = std::current_exception();
  }
  std::unique_lock<std::mutex> lk(mu_);
  cv_done_.wait(lk, [&] { return remaining_ == 0; });
  job_ = nullptr;
  if (caller_err) std::rethrow_exception(caller_err);
  if (first_error_) std::rethrow_exception(first_error_);
}

}  // namespace thiim
