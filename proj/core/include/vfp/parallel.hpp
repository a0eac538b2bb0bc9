#pragma once

#include <cstddef>
#include <functional>

namespace vfp {

// Worker count used by the column/slice kernels. 1 (the default) runs every
// loop inline on the calling thread.
void set_thread_count(int threads);
int thread_count() noexcept;

// Runs body(begin, end) over contiguous chunks of [0, n). Chunks never share
// an index, so kernels that only write their own columns stay deterministic
// for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace vfp
