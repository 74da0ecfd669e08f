#pragma once

#include <functional>

namespace pasa {

// Runs fn(i) for every i in [0, count) on up to `threads` workers pulling
// from a shared counter. All indices run even if some fail; afterwards the
// lowest-index exception (if any) is rethrown, keeping error reporting
// deterministic. threads <= 1 executes inline on the calling thread.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

// CPU time consumed by the calling thread, in seconds.
double thread_cpu_seconds();

// Monotonic wall clock, in seconds.
double wall_seconds();

}  // namespace pasa
