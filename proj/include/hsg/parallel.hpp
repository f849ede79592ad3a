/*
Copyright 2026 The hsg Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef HSG_PARALLEL_HPP
#define HSG_PARALLEL_HPP

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace hsg {

/// Runs body(begin, end) over [0, count) split into at most `threads`
/// contiguous chunks. The split depends only on count and threads, and each
/// index is visited by exactly one chunk, so results written per index do not
/// depend on scheduling. If chunks throw, the exception of the lowest chunk is
/// rethrown after all threads have joined.
template <class Body>
void parallel_for(int count, int threads, const Body& body) {
  if (count <= 0) return;
  const int chunks = std::clamp(threads, 1, count);
  if (chunks == 1) {
    body(0, count);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(chunks - 1));
  auto run = [&](int c) {
    const int begin = static_cast<int>(static_cast<long long>(count) * c / chunks);
    const int end = static_cast<int>(static_cast<long long>(count) * (c + 1) / chunks);
    try {
      body(begin, end);
    } catch (...) {
      errors[static_cast<std::size_t>(c)] = std::current_exception();
    }
  };
  for (int c = 1; c < chunks; ++c) pool.emplace_back(run, c);
  run(0);
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace hsg

#endif  // HSG_PARALLEL_HPP
