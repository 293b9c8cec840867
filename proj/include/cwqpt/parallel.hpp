#pragma once

#include <cstddef>
#include <functional>

namespace cwqpt {

/// Worker count: CWQPT_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

/// Calls body(i) for i in [0, n). Each index is visited exactly once; callers
/// write results into slot i so the output does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace cwqpt
