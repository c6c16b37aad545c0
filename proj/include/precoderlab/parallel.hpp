#pragma once

#include <cstdint>
#include <functional>

namespace precoderlab {

/// Runs fn(begin, end) over a static contiguous partition of [0, n) on up to
/// `threads` threads. fn must only touch disjoint state per index range.
/// The partition depends only on (n, threads), and callers that need
/// thread-count-independent results must combine per-index outputs in index
/// order (or associatively, for exact types like integers).
void parallel_for_range(std::int64_t n, int threads,
                        const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace precoderlab
