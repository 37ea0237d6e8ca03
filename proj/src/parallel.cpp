#include "trismooth/parallel.hpp"

namespace trismooth {

ThreadPool::ThreadPool(int workers) {
  if (workers < 1) workers = 1;
  threads_.reserve(workers - 1);
  for (int i = 0; i < workers - 1; ++i) threads_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard lock(mu_);
    stop_ = true;
  }
  wake_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

void ThreadPool::run(int count, const std::function<void(int)>& task) {
  if (count <= 0) return;
  if (threads_.empty()) {
    for (int i = 0; i < count; ++i) task(i);
    return;
  }
  uint64_t gen;
  {
    std::lock_guard lock(mu_);
    task_ = &task;
    task_count_ = count;
    next_ = 0;
    pending_ = count;
    gen = ++generation_;
  }
  wake_cv_.notify_all();
  drain(gen);
  std::unique_lock lock(mu_);
  done_cv_.wait(lock, [this] { return pending_ == 0; });
  task_ = nullptr;
}

void ThreadPool::worker_loop() {
  uint64_t seen = 0;
  for (;;) {
    uint64_t gen;
    {
      std::unique_lock lock(mu_);
      wake_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      gen = generation_;
      seen = gen;
    }
    drain(gen);
  }
}

// Claims task indices of generation `gen` until the batch is exhausted or a
// newer batch has started. Claims are mutex-guarded: batches are small (one
// task per chunk), so a claimed task always outlives its generation check.
void ThreadPool::drain(uint64_t gen) {
  for (;;) {
    const std::function<void(int)>* task;
    int i;
    {
      std::lock_guard lock(mu_);
      if (generation_ != gen || next_ >= task_count_) return;
      i = next_++;
      task = task_;
    }
    (*task)(i);
    std::lock_guard lock(mu_);
    if (--pending_ == 0) done_cv_.notify_all();
  }
}

}  // namespace trismooth
