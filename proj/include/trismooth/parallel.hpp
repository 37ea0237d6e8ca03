#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace trismooth {

struct ChunkRange {
  int begin = 0;
  int end = 0;
};

/// Contiguous ceil-division chunk w of [0, n) split across `workers` chunks.
/// Trailing chunks may be short or empty.
inline ChunkRange worker_chunk(int n, int workers, int w) {
  const int chunk = (n + workers - 1) / workers;
  const int begin = w * chunk < n ? w * chunk : n;
  const int end = begin + chunk < n ? begin + chunk : n;
  return {begin, end};
}

/// Fork-join pool: run(count, task) invokes task(0..count-1) across the
/// calling thread plus workers-1 pool threads and returns once all have
/// finished. One run() at a time (single orchestrator).
class ThreadPool {
 public:
  explicit ThreadPool(int workers);
  ~ThreadPool();
  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int workers() const { return static_cast<int>(threads_.size()) + 1; }

  void run(int count, const std::function<void(int)>& task);

 private:
  void worker_loop();
  void drain(uint64_t gen);

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable wake_cv_;
  std::condition_variable done_cv_;
  // all below guarded by mu_
  const std::function<void(int)>* task_ = nullptr;
  int task_count_ = 0;
  int next_ = 0;
  int pending_ = 0;
  uint64_t generation_ = 0;
  bool stop_ = false;
};

}  // namespace trismooth
