#pragma once

#include <cstddef>
#include <functional>

namespace gravwell {

/// Worker count: requested if positive, else GRAVWELL_THREADS, else the
/// hardware concurrency.
int resolve_threads(int requested);

/// Process-wide default used when parallel_for gets threads <= 0.
void set_default_threads(int threads);
int default_threads();

/// Runs body(i) for i in [0, n). Each index writes only its own output slot,
/// so results do not depend on the worker count. The exception thrown for the
/// lowest failing index is rethrown.
void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body, int threads = 0);

} // namespace gravwell
