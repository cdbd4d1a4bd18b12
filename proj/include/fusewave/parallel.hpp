#ifndef FUSEWAVE_PARALLEL_HPP
#define FUSEWAVE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace fusewave {

/// Calls fn(i) for i in [0, n) on up to `threads` workers. Each index is
/// visited exactly once; the first exception thrown is rethrown here.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Worker count from FUSEWAVE_THREADS when set to a positive integer,
/// otherwise std::thread::hardware_concurrency() (at least 1).
unsigned thread_count_from_env();

}  // namespace fusewave

#endif  // FUSEWAVE_PARALLEL_HPP
