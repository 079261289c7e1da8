#pragma once

#include <cstddef>
#include <functional>

namespace mf {

/// Upper bound on worker threads used by row-parallel loops.
/// Defaults to MF_THREADS from the environment, else hardware concurrency.
unsigned thread_limit();
void set_thread_limit(unsigned n);

/// Runs body(i) for i in [0, n). Iterations are split into contiguous
/// blocks; each index is visited exactly once, so results written per
/// index do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mf
