// lorentzlab - deterministic data-parallel loop helper
//
// parallel_for splits [begin, end) into contiguous chunks, one per worker
// thread, and joins before returning. Callers write results into
// preallocated per-index slots and reduce serially afterwards, so results
// never depend on the thread count or scheduling. The worker count comes
// from LORENTZLAB_THREADS when set (clamped to >= 1), otherwise from the
// hardware concurrency.

#pragma once

#include <functional>

namespace lorentz {

int thread_count();

void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace lorentz
