// Copyright 2026 The QLA2D Authors
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

#include "qla/parallel.hpp"

#include <algorithm>
#include <stdexcept>

namespace qla {

namespace {

void chunk(int n, int parts, int id, int& begin, int& end) {
  const int base = n / parts;
  const int extra = n % parts;
  begin = id * base + std::min(id, extra);
  end = begin + base + (id < extra ? 1 : 0);
}

double tree_sum_range(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return v[0];
  const std::size_t half = n / 2;
  return tree_sum_range(v, half) + tree_sum_range(v + half, n - half);
}

}  // namespace

WorkerPool::WorkerPool(int workers) : workers_(workers) {
  if (workers < 1) throw std::invalid_argument("worker count must be at least 1");
  for (int id = 1; id < workers_; ++id) threads_.emplace_back([this, id] { worker_loop(id); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    stop_ = true;
  }
  start_cv_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::parallel_for(int n, const std::function<void(int, int)>& fn) {
  if (n <= 0) return;
  if (workers_ == 1) {
    fn(0, n);
    return;
  }
  {
    std::lock_guard<std::mutex> lock(mu_);
    job_ = &fn;
    job_n_ = n;
    pending_ = workers_ - 1;
    ++generation_;
  }
  start_cv_.notify_all();
  int b, e;
  chunk(n, workers_, 0, b, e);
  if (b < e) fn(b, e);
  std::unique_lock<std::mutex> lock(mu_);
  done_cv_.wait(lock, [this] { return pending_ == 0; });
  job_ = nullptr;
}

void WorkerPool::worker_loop(int id) {
  unsigned long seen = 0;
  for (;;) {
    const std::function<void(int, int)>* job;
    int n;
    {
      std::unique_lock<std::mutex> lock(mu_);
      start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      job = job_;
      n = job_n_;
    }
    int b, e;
    chunk(n, workers_, id, b, e);
    if (b < e) (*job)(b, e);
    {
      std::lock_guard<std::mutex> lock(mu_);
      --pending_;
    }
    done_cv_.notify_one();
  }
}

double tree_sum(const std::vector<double>& values) { return tree_sum_range(values.data(), values.size()); }

}  // namespace qla
