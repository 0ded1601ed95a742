#pragma once

#include <cstddef>
#include <functional>

namespace gslab {

/// Worker count: GSLAB_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
std::size_t thread_count();

/// Calls body(i) for i in [0, n) across thread_count() workers in
/// contiguous blocks. Bodies must write only to slots owned by i; callers
/// merge in index order so results never depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gslab
