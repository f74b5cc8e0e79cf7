#pragma once

#include <functional>

namespace mono {

/// Worker count for site-parallel loops (1 = serial). Results are identical
/// for any count: disjoint writes, reductions combined in fixed chunk order.
void set_threads(int n);
int threads();

/// Static partition of [0, n) into contiguous chunks, one task per chunk.
void parallel_for(int n, const std::function<void(int begin, int end)>& body);

} // namespace mono
