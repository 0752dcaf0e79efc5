#pragma once

#include <cstddef>
#include <functional>

namespace sqdiff {

// Process-wide worker count used by the counting loops.  0 means "all
// hardware threads".  Results never depend on this value.
void set_thread_count(unsigned n);
unsigned thread_count();

// Splits [0, count) into contiguous chunks and calls body(begin, end, chunk)
// on each, possibly concurrently.  chunk indexes are 0..chunks-1 in range
// order, so per-chunk partial results can be merged deterministically.
// Returns the number of chunks used.
std::size_t parallel_for(std::size_t count,
                         const std::function<void(std::size_t begin, std::size_t end, std::size_t chunk)>& body);

}  // namespace sqdiff
