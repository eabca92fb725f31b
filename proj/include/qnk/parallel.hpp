#pragma once

#include <cstddef>
#include <functional>

namespace qnk {

/// Worker cap. 0 means: QNK_THREADS if set, else hardware concurrency.
void set_thread_count(int n);
int thread_count();

/// Calls fn(i) for i in [0, n) on up to thread_count() workers. Chunks are
/// contiguous so results written by index stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qnk
