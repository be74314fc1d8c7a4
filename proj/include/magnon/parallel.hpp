#pragma once

#include <cstddef>
#include <functional>

namespace magnon {

// Worker count: MAGNON_THREADS if set and positive, else hardware concurrency.
int worker_count();

// Runs fn(0..n-1) across `workers` threads. The first exception thrown by any
// task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &fn,
                  int workers = worker_count());

}  // namespace magnon
