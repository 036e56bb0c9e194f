#pragma once

#include <cstddef>
#include <functional>

namespace wormnoc {

// Runs fn(0) .. fn(n-1) on up to `threads` workers (0 = hardware
// concurrency) and blocks until all complete. Results must be written to
// per-index slots so the outcome does not depend on scheduling order.
// The first exception thrown by a job is rethrown after all workers join.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace wormnoc
