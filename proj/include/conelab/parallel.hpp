#pragma once

#include <cstddef>
#include <functional>

namespace conelab {

/// Worker count: CONELAB_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Calls fn(i) for i in [0, count). Work is split across thread_count()
/// threads; callers write results by index so output order is fixed. The
/// first exception thrown by any task is rethrown after all threads join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace conelab
