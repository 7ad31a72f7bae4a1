#pragma once

#include <functional>

namespace selzeta {

/// Runs fn(i) for i in [0, n) on up to n_threads threads with a static index
/// partition. Tasks must be independent and write only to their own slots;
/// results are then identical for any thread count.
void parallel_for(int n, int n_threads, const std::function<void(int)>& fn);

}  // namespace selzeta
