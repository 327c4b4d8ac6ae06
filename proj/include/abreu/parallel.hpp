#pragma once

#include <cstddef>
#include <functional>

namespace abreu {

/// Global worker cap: set from the CLI --threads flag or the ABREU_THREADS
/// environment variable; defaults to the hardware concurrency.
void set_thread_cap(int n);
int thread_cap();

/// Runs fn(i) for i in [0, n). Work items must be independent and write
/// only to their own slots; reductions belong to the caller so that
/// results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace abreu
