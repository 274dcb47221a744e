#pragma once

#include <cstddef>
#include <functional>

namespace pimat {

/// Upper bound on worker threads. Defaults to PIMAT_THREADS when set, else
/// the hardware concurrency.
int thread_cap();
void set_thread_cap(int threads);

/// Calls fn(i) for i in [0, count). Work is split into contiguous blocks; each
/// index is visited exactly once, so callers writing results by index get
/// scheduling-independent output.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace pimat
