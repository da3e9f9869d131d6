#pragma once

#include <cstddef>
#include <functional>

namespace geo {

/// Fixed number of work chunks. Reductions combine per-chunk results in
/// chunk order, so outputs are bit-identical for every worker count.
inline constexpr std::size_t kWorkChunks = 128;

/// Global worker budget for sampling loops; <= 1 runs sequentially.
void set_worker_count(int workers);
int worker_count();
int hardware_workers();

/// Calls fn(chunk, begin, end) for each chunk of the fixed partition of
/// [0, n). Chunks may run on any worker; per-chunk outputs must go into
/// per-chunk slots and be reduced in chunk order by the caller.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace geo
