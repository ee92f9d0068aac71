#pragma once

#include <cstddef>
#include <functional>

namespace sofup {

/// Worker count from SOFUP_THREADS, else hardware concurrency (at least 1).
std::size_t default_threads();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default).
/// Work is claimed by index; the first exception by lowest index is rethrown
/// after all workers join.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace sofup
