#pragma once

#include <functional>

namespace filmsim {

/// Worker count used by parallel loops: hardware concurrency capped by the
/// FILMSIM_THREADS environment variable (read once per process).
int worker_count();

/// Runs fn(0..n-1) over a block partition of the workers.  Callers must
/// write to disjoint outputs; results are independent of the thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace filmsim
