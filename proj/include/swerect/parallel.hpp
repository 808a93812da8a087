#pragma once

#include <cstddef>
#include <functional>

namespace swerect {

// Worker count: hardware concurrency, capped by SWE_RECT_THREADS when set.
std::size_t worker_limit();

// Runs body(k) for k in [0, n), split into contiguous chunks across workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace swerect
