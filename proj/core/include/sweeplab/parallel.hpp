#pragma once

#include <cstdint>
#include <functional>

namespace sweeplab {

// Hardware concurrency, at least 1.
int default_workers();

// Runs fn(begin, end) over a contiguous partition of [0, n). Callers write
// results into preallocated index-addressed slots, so output never depends on
// the worker count. workers <= 0 means default_workers().
void parallel_chunks(std::int64_t n, int workers,
                     const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace sweeplab
