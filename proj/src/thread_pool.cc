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

#include "jump_mppi/thread_pool.h"

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>

namespace jump_mppi {
namespace {

thread_local bool in_worker = false;

}  // namespace

ThreadPool::ThreadPool(int num_threads)
    : num_threads_(std::max(1, num_threads)) {
  // Worker 0 is the calling thread.
  for (int w = 1; w < num_threads_; ++w) {
    threads_.emplace_back([this, w] { WorkerLoop(w); });
  }
}

ThreadPool::~ThreadPool() {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

namespace {

void RunBlock(const std::function<void(int, int)>& fn, int count, int workers,
              int worker) {
  const int begin = static_cast<int>(
      static_cast<long long>(count) * worker / workers);
  const int end = static_cast<int>(
      static_cast<long long>(count) * (worker + 1) / workers);
  for (int i = begin; i < end; ++i) fn(i, worker);
}

}  // namespace

void ThreadPool::WorkerLoop(int worker) {
  std::size_t seen = 0;
  while (true) {
    const std::function<void(int, int)>* job;
    int count;
    {
      std::unique_lock<std::mutex> lock(mutex_);
      start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      job = job_;
      count = job_count_;
    }
    in_worker = true;
    RunBlock(*job, count, num_threads_, worker);
    in_worker = false;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }
}

void ThreadPool::ParallelFor(int count,
                             const std::function<void(int, int)>& fn) {
  if (count <= 0) return;
  if (num_threads_ == 1 || in_worker || count == 1) {
    for (int i = 0; i < count; ++i) fn(i, 0);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::function<void(int, int)> guarded = [&](int i, int w) {
    try {
      fn(i, w);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  {
    std::lock_guard<std::mutex> lock(mutex_);
    job_ = &guarded;
    job_count_ = count;
    pending_ = num_threads_ - 1;
    ++generation_;
  }
  start_cv_.notify_all();
  in_worker = true;
  RunBlock(guarded, count, num_threads_, 0);
  in_worker = false;
  {
    std::unique_lock<std::mutex> lock(mutex_);
    done_cv_.wait(lock, [&] { return pending_ == 0; });
    job_ = nullptr;
  }
  if (error) std::rethrow_exception(error);
}

int DefaultThreadCount() {
  if (const char* env = std::getenv("JUMP_MPPI_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void ParallelFor(ThreadPool* pool, int count,
                 const std::function<void(int, int)>& fn) {
  if (pool == nullptr) {
    for (int i = 0; i < count; ++i) fn(i, 0);
    return;
  }
  pool->ParallelFor(count, fn);
}

}  // namespace jump_mppi
