#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace suds::cli {

inline std::size_t resolve_jobs(std::size_t jobs) {
  if (jobs > 0) return jobs;
  return std::max<std::size_t>(std::thread::hardware_concurrency(), 1);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Results must be written
// by index, so the merge order never depends on scheduling. The exception of
// the lowest failing index is rethrown.
template <class F>
void parallel_for(std::size_t n, std::size_t jobs, F&& fn) {
  jobs = std::min(resolve_jobs(jobs), std::max<std::size_t>(n, 1));
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace suds::cli
