// Index-parallel loop over a fixed worker pool

#pragma once

#include <cstddef>
#include <functional>

namespace excitonsim {

// Runs body(i) for every i in [0, count) on up to `workers` threads.
// Each index runs exactly once; callers write results into slot i, so output
// order never depends on scheduling. The first exception thrown by any body is
// rethrown on the calling thread after all workers have joined.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

// Worker count to use when the caller passes 0: hardware concurrency, at least 1.
std::size_t default_workers() noexcept;

} // namespace excitonsim
