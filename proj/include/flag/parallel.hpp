#pragma once

#include <cstddef>
#include <functional>

namespace flag {

// Process-wide cap on worker threads (0 = hardware concurrency).
void set_max_threads(int n);
int max_threads();

// Runs fn(i) for i in [0, n).  Nested calls run serially inside the
// calling worker, so callers never need to worry about oversubscription.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace flag
