#pragma once

#include <cstddef>
#include <functional>

namespace annulus_lab {

/// Worker count: ANNULUS_LAB_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t thread_limit();

/// Runs body(i) for i in [0, n) on up to thread_limit() threads. The first
/// exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace annulus_lab
