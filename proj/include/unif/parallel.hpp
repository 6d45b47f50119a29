#pragma once

#include <cstddef>
#include <functional>

namespace unif {

/// Number of worker threads used by the numeric kernels (default 1).
void set_threads(unsigned n);
unsigned threads();

/// Run task(i) for every i in [0, count), spread over the configured
/// threads. Tasks must write only to their own output slot; callers combine
/// slots afterwards in index order, which keeps every reduction a fixed tree
/// that does not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace unif
