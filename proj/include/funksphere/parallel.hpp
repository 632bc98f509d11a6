#pragma once

#include <cstddef>
#include <functional>

namespace funksphere {

/// Worker count: hardware concurrency, capped by FUNKSPHERE_THREADS when set.
int thread_count();

/// Runs body(begin, end) over a partition of [0, n). Chunks are disjoint, so
/// bodies that write only to their own index range need no locking.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace funksphere
