// Copyright 2026 The Jump-MPPI Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JUMP_MPPI_THREAD_POOL_H_
#define JUMP_MPPI_THREAD_POOL_H_

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace jump_mppi {

// Fixed-size worker pool for data-parallel loops. Work is split into
// contiguous index blocks, one per worker; callers own result ordering.
class ThreadPool {
 public:
  explicit ThreadPool(int num_threads);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  int size() const { return num_threads_; }

  // Calls fn(index, worker) for every index in [0, count). `worker` is in
  // [0, size()) and identifies per-worker scratch space. Blocks until done.
  // Nested calls from inside a worker run inline on that worker.
  void ParallelFor(int count, const std::function<void(int, int)>& fn);

 private:
  void WorkerLoop(int worker);

  int num_threads_;
  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(int, int)>* job_ = nullptr;
  int job_count_ = 0;
  std::size_t generation_ = 0;
  int pending_ = 0;
  bool stop_ = false;
};

// Worker count from JUMP_MPPI_THREADS, else hardware concurrency (>= 1).
int DefaultThreadCount();

// Runs fn(index, worker) serially when `pool` is null.
void ParallelFor(ThreadPool* pool, int count,
                 const std::function<void(int, int)>& fn);

}  // namespace jump_mppi

#endif  // JUMP_MPPI_THREAD_POOL_H_
