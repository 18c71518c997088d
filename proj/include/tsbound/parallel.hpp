#ifndef TSBOUND_PARALLEL_HPP
#define TSBOUND_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace tsbound {

// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency).
// Callers must write results by index: the schedule never influences the
// output, so serial and parallel runs agree byte for byte. The first
// exception thrown by a task is rethrown on the calling thread.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

} // namespace tsbound

#endif
