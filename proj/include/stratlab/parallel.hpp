#pragma once

#include <cstddef>
#include <functional>

namespace stratlab {

/// Worker count for intra-stage loops. Resolution order: value set via
/// set_worker_count (CLI flag), else STRATLAB_WORKERS env var, else 1.
int worker_count();
void set_worker_count(int n);

/// Runs fn(i) for i in [0, n). Each index is processed exactly once and
/// writes only to its own output slot; results are independent of the
/// worker count by construction.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Chunked variant: fn(begin, end) over disjoint ranges.
void parallel_for_ranges(std::size_t n,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace stratlab
