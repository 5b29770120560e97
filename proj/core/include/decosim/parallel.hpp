// parallel.hpp: static-schedule parallel loop over independent slots.
//
// Work items write to disjoint result slots and reductions happen serially
// afterwards, so results are identical for any thread count. DECOSIM_THREADS
// caps the pool; nested calls run serially.

#pragma once

#include <cstddef>
#include <functional>

namespace decosim::par {

int max_threads();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace decosim::par
