#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace bspace {

struct ExecutionOptions {
  unsigned threads = 1;
};

/// Runs body(i) for i in [0, count), striding indices across threads. Each
/// index is handled by exactly one thread, so per-index results are
/// independent of the thread count.
template <class Body>
void parallel_for(std::size_t count, const ExecutionOptions& exec, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1U, exec.threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace bspace
