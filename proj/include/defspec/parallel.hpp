#pragma once

#include <cstddef>
#include <functional>

namespace defspec {

/// Worker cap from DEFSPEC_THREADS (positive integer); 1 when unset or invalid.
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Callers write into slot i only, so results do
/// not depend on the number of workers. The first exception thrown by any
/// body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace defspec
