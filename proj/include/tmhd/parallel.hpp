#pragma once

#include <cstddef>
#include <functional>

namespace tmhd {

// Thread cap from TMHD_THREADS (0 or unset = auto). Read once per process.
int thread_cap();

// Statically partitioned parallel loop over [0, n). The partition is fixed
// (independent of the thread count), so elementwise writes are deterministic
// for any TMHD_THREADS setting. Reductions are not provided; callers that
// reduce do so serially in index order.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace tmhd
