#pragma once

/// \file parallel.hpp
/// Minimal worker-pool loop for independent per-index tasks.

#include <functional>

namespace msc {

/// Number of workers to use when the caller does not pin one: the
/// MSBENCH_THREADS environment variable when set, otherwise the hardware
/// concurrency.
int default_worker_count();

/// Runs fn(i) for i in [0, count) on `workers` threads. Tasks are claimed
/// from a shared atomic counter; with workers <= 1 the loop stays on the
/// calling thread. Exceptions are captured and rethrown on the caller.
void parallel_for(int count, int workers, const std::function<void(int)>& fn);

}  // namespace msc
