// Copyright 2026 The bginit Authors.
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

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bginit {

// Splits [0, count) into `workers` contiguous chunks and runs
// fn(begin, end) for each, one chunk per thread. The calling thread takes
// the first chunk. The first exception thrown by any chunk is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  const std::size_t chunks =
      std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(count, 1));
  if (chunks <= 1) {
    if (count > 0) fn(std::size_t{0}, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&](std::size_t begin, std::size_t end) {
    try {
      fn(begin, end);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };
  const std::size_t per = count / chunks;
  const std::size_t extra = count % chunks;
  std::vector<std::jthread> threads;
  threads.reserve(chunks - 1);
  std::size_t begin = per + (extra > 0 ? 1 : 0);
  const std::size_t first_end = begin;
  for (std::size_t c = 1; c < chunks; ++c) {
    const std::size_t len = per + (c < extra ? 1 : 0);
    threads.emplace_back(run, begin, begin + len);
    begin += len;
  }
  run(0, first_end);
  threads.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bginit
