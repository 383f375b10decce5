#pragma once

#include <cstddef>
#include <functional>

namespace groundsight {

/// Worker cap for the parallel loops in the library. Defaults to the value of
/// GROUNDSIGHT_THREADS when set, else 1. Results never depend on it.
int thread_count();
void set_thread_count(int n);

/// Calls body(begin, end) over disjoint contiguous chunks of [0, n). Chunks are
/// fixed by n and the thread count only, so per-index writes are deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace groundsight
