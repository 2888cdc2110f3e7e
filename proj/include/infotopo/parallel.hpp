#pragma once

#include <cstddef>
#include <functional>

namespace infotopo {

/// Worker cap for library-internal loops. Initialized from INFOTOPO_THREADS
/// (0 or unset means hardware concurrency).
std::size_t worker_count();
void set_worker_count(std::size_t workers);

/// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
/// write to disjoint slots so results do not depend on scheduling. The first
/// exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace infotopo
