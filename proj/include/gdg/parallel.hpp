// SPDX-License-Identifier: MIT
// Fork-join worker pool with a fixed chunk grid. Reductions accumulate one
// partial per chunk and combine them in chunk order, so results are bitwise
// reproducible for any worker count.
#pragma once

#include <condition_variable>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace gdg {

class WorkerPool {
public:
  // Number of chunks every loop is split into; fixed so that floating-point
  // reduction order does not depend on the worker count.
  static constexpr int chunk_grid = 64;

  // count_ must be final before the first thread starts; worker_loop reads it
  // to pick its chunk stripe.
  explicit WorkerPool(int workers = 1) : count_(workers < 1 ? 1 : workers) {
    for (int w = 1; w < count_; ++w)
      threads_.emplace_back([this, w] { worker_loop(w); });
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  ~WorkerPool() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
  }

  int workers() const { return count_; }

  // Runs fn(chunk_id) for chunk_id in [0, n_chunks). Chunks are assigned
  // statically: worker w takes the ids congruent to w. Blocks until done.
  void run_chunks(int n_chunks, const std::function<void(int)>& fn) {
    const int nw = workers();
    if (nw == 1) {
      for (int c = 0; c < n_chunks; ++c) fn(c);
      return;
    }
    {
      std::lock_guard<std::mutex> lock(mutex_);
      job_ = &fn;
      job_chunks_ = n_chunks;
      workers_done_ = 0;
      error_ = nullptr;
      ++generation_;
    }
    cv_.notify_all();
    try {
      for (int c = 0; c < n_chunks; c += nw) fn(c); // main thread takes stripe 0
    } catch (...) {
      std::lock_guard<std::mutex> lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
    std::unique_lock<std::mutex> lock(mutex_);
    done_cv_.wait(lock, [this, nw] { return workers_done_ == nw - 1; });
    job_ = nullptr;
    if (error_) {
      // A chunk failed; the job is abandoned and the first error resurfaces
      // on the calling thread.
      const std::exception_ptr e = error_;
      error_ = nullptr;
      lock.unlock();
      std::rethrow_exception(e);
    }
  }

  // f(begin, end, chunk) over [0, n) split into chunk_grid contiguous ranges.
  template <class F>
  void loop(std::int64_t n, F&& f) {
    const std::function<void(int)> fn = [&](int c) {
      auto [b, e] = chunk_range(n, c);
      if (b < e) f(b, e, c);
    };
    run_chunks(chunk_grid, fn);
  }

  // Deterministic sum of f(begin, end) over the chunk grid.
  template <class F>
  double sum(std::int64_t n, F&& f) {
    double partial[chunk_grid] = {};
    const std::function<void(int)> fn = [&](int c) {
      auto [b, e] = chunk_range(n, c);
      if (b < e) partial[c] = f(b, e);
    };
    run_chunks(chunk_grid, fn);
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
  }

  static std::pair<std::int64_t, std::int64_t> chunk_range(std::int64_t n, int chunk) {
    const std::int64_t lo = n * chunk / chunk_grid;
    const std::int64_t hi = n * (chunk + 1) / chunk_grid;
    return {lo, hi};
  }

private:
  void worker_loop(int id) {
    const int nw = count_;
    std::uint64_t seen = 0;
    while (true) {
      const std::function<void(int)>* job;
      int n_chunks;
      {
        std::unique_lock<std::mutex> lock(mutex_);
        cv_.wait(lock, [this, seen] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        job = job_;
        n_chunks = job_chunks_;
      }
      try {
        for (int c = id; c < n_chunks; c += nw) (*job)(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex_);
        if (!error_) error_ = std::current_exception();
      }
      std::lock_guard<std::mutex> lock(mutex_);
      ++workers_done_;
      done_cv_.notify_all();
    }
  }

  int count_ = 1;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable cv_, done_cv_;
  const std::function<void(int)>* job_ = nullptr;
  std::exception_ptr error_;
  int job_chunks_ = 0;
  int workers_done_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

} // namespace gdg
