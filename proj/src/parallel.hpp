#ifndef DIAMOND_SRC_PARALLEL_HPP
#define DIAMOND_SRC_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace diamond {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

// Runs fn(begin, end) over a partition of [0, n); each index is owned by
// exactly one chunk so writers never race.  The first exception thrown by any
// chunk is rethrown in the caller.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  int w = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(n, 1));
  if (w <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> threads;
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::size_t chunk = (n + w - 1) / w;
  for (int i = 0; i < w; ++i) {
    std::size_t b = std::min(n, static_cast<std::size_t>(i) * chunk);
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    threads.emplace_back([&, b, e] {
      try {
        fn(b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace diamond

#endif
