#pragma once

#include <cstddef>
#include <functional>

namespace twinterf {

/// Worker count from TWINTERF_THREADS (unset or 0 = hardware concurrency).
unsigned worker_count();

/// Calls body(i) for every i in [0, count) on up to worker_count() threads.
/// body must only write to slots owned by index i. The first exception
/// thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace twinterf
