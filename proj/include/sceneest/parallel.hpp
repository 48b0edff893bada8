#pragma once

#include <cstddef>
#include <functional>

namespace sceneest {

// Process-wide cap on worker threads used by parallel_for.
// 0 (the default) means hardware concurrency.
void set_max_threads(int n);
int effective_threads(std::size_t n);

// Chunked parallel map over indices [0, n). fn must be pure per index or
// write only to index-owned slots; outputs are then identical for any
// thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace sceneest
