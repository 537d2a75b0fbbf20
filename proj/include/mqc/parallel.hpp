#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace mqc {

/// Resolve a worker count: explicit request > MQC_WORKERS > hardware.
int resolve_workers(int requested);

/// Run fn(i) for i in [0, n) on up to `workers` threads. Results must be
/// written to per-index slots; ordering of side effects is unspecified.
/// Exceptions are captured and rethrown on the calling thread.
void parallel_for(int n, int workers, const std::function<void(int)>& fn);

}  // namespace mqc
