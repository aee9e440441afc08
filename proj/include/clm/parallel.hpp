#ifndef CLM_PARALLEL_HPP
#define CLM_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace clm {

/// Worker count: CLM_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs task(i) for i in [0, count) on up to thread_count() threads. Tasks
/// must write only to their own slot. If tasks throw, the exception of the
/// lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

}  // namespace clm

#endif  // CLM_PARALLEL_HPP
