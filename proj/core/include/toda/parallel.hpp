#pragma once

#include <cstddef>
#include <functional>

namespace toda {

// Worker count for independent kernel checks. Reads TODA_KERNEL_THREADS
// (positive integer) and otherwise uses the hardware concurrency.
std::size_t kernel_threads();

// Runs body(i) for i in [0, n), handing indices out dynamically. The
// first exception thrown by any worker is rethrown on the calling thread.
// Callers write results into per-index slots so output order never depends
// on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace toda
