#include "precoderlab/parallel.hpp"

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace precoderlab {

void parallel_for_range(std::int64_t n, int threads,
                        const std::function<void(std::int64_t, std::int64_t)>& fn) {
  if (n <= 0) return;
  if (threads < 1) threads = 1;
  const std::int64_t workers = std::min<std::int64_t>(threads, n);
  if (workers == 1) {
    fn(0, n);
    return;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto guarded = [&](std::int64_t b, std::int64_t e) {
    try {
      fn(b, e);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers - 1));
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (std::int64_t w = 1; w < workers; ++w) {
    const std::int64_t b = w * chunk;
    const std::int64_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(guarded, b, e);
  }
  guarded(0, std::min(n, chunk));
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace precoderlab
