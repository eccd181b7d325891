#ifndef KCHEEGER_PARALLEL_HPP
#define KCHEEGER_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace kcheeger {

/// Worker count from KCHEEGER_THREADS; 0, unset or unparsable means hardware concurrency.
inline std::size_t thread_count() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("KCHEEGER_THREADS");
  if (env == nullptr) return hw;
  try {
    long v = std::stol(env);
    return v > 0 ? static_cast<std::size_t>(v) : hw;
  } catch (const std::exception&) {
    return hw;
  }
}

/// Calls fn(i) for i in [0, count) on up to `threads` workers. Callers write
/// results into per-index slots so output order never depends on scheduling.
/// The exception from the lowest failing index is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t threads = thread_count()) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

} // namespace kcheeger

#endif // KCHEEGER_PARALLEL_HPP
