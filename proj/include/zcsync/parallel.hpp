#pragma once

#include <cstddef>
#include <functional>

namespace zcsync {

// Worker count: hardware concurrency, capped by the ZCSYNC_MAX_WORKERS
// environment variable when it holds a positive integer.
unsigned worker_count();

// Runs body(i) for i in [0, count) across worker_count() threads. Each index
// runs exactly once; callers write results into per-index slots.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace zcsync
