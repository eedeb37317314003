#pragma once

#include <cstddef>
#include <functional>

namespace hypjac {

/// Worker count: HYPJAC_THREADS if set and positive, else the hardware count.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Results must
/// be written to per-index slots; the first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace hypjac
