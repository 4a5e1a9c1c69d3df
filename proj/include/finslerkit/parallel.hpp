#pragma once

#include <functional>

namespace finsler {

/// Worker count for data-parallel loops: hardware concurrency, capped by the
/// FINSLERKIT_THREADS environment variable when set.
int worker_count();

/// Runs fn(0) .. fn(count-1). Work items must be independent; each item is
/// computed sequentially within one worker, so results do not depend on the
/// number of workers. The first exception thrown by any item is rethrown.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace finsler
