#pragma once

#include <functional>

namespace wrl {

// Thread count used by parallel_for.  Defaults to 1; the CLI seeds it from
// --threads or WRL_THREADS.  Results are independent of the setting: workers
// write disjoint index ranges and all reductions stay sequential.
int thread_count();
void set_thread_count(int n);

// Runs fn(i) for i in [begin, end), split into contiguous per-thread blocks.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

}  // namespace wrl
