#pragma once

#include <functional>

namespace netdp {

// Runs fn(0..task_count-1) on a bounded pool. threads <= 0 picks the
// hardware count. Tasks must write only to their own output slots; results
// are then deterministic regardless of scheduling. The first exception
// thrown by a task is rethrown on the calling thread after the pool drains.
void parallel_for(int task_count, int threads, const std::function<void(int)>& fn);

int resolve_thread_count(int requested);

}  // namespace netdp
