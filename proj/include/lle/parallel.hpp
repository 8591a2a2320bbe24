#pragma once

#include <cstddef>
#include <functional>

namespace lle {

// Number of worker threads used when a caller passes threads == 0.
// Honors LLE_THREADS, falls back to std::thread::hardware_concurrency().
unsigned default_thread_count();

// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
// visited exactly once; callers write into preallocated slots so results do
// not depend on the schedule. The first exception thrown is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace lle
