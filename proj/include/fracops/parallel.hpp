#pragma once

#include <cstddef>
#include <functional>

namespace fracops {

/// Worker cap: FRACOPS_THREADS if set to a positive integer, else the hardware parallelism.
int worker_count();

/// Calls body(i) for i in [0, count) on up to worker_count() threads. Each index runs exactly once;
/// the first exception thrown by any body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fracops
