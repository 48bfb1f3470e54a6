#pragma once

#include <cstddef>
#include <functional>

namespace certicurve {

// Worker cap: CERTICURVE_THREADS if set to a positive integer, otherwise the
// hardware concurrency.
std::size_t worker_count();

// Runs f(0) .. f(n - 1) on up to worker_count() threads. The first exception
// thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace certicurve
