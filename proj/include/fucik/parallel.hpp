#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace fucik {

/// Applies fn(i) for i in [0, count) across a small thread pool and returns
/// the results indexed by i. Each invocation is a pure computation, so the
/// result vector is identical to the sequential one regardless of scheduling.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t count, Fn&& fn) {
  std::vector<T> out(count);
  if (count == 0) return out;
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (workers > count) workers = static_cast<unsigned>(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count || failed.load()) return;
          try {
            out[i] = fn(i);
          } catch (...) {
            if (!failed.exchange(true)) first_error = std::current_exception();
            return;
          }
        }
      });
  }
  if (failed.load()) std::rethrow_exception(first_error);
  return out;
}

}  // namespace fucik
