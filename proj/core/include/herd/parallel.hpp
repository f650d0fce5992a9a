#pragma once

#include <cstddef>
#include <functional>

namespace herd {

// Runs fn(0..n-1) over `threads` workers (0 = hardware concurrency,
// 1 = inline). Results must be written to per-index slots; the partition
// is static so output never depends on scheduling. The first exception
// thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace herd
