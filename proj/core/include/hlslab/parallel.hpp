#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace hlslab {

/// Worker count used by parallel_for. Defaults to hardware_concurrency,
/// capped by the HLSLAB_THREADS environment variable.
int worker_count();

/// Override the worker count (0 restores the default). Mainly for tests.
void set_worker_count(int n);

/// Runs fn(i) for i in [0, count) on up to worker_count() threads.
/// Work is chunked deterministically; fn must write only to disjoint outputs.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Deterministic pairwise (tree) summation; result is independent of the
/// worker count because it is always evaluated in index order.
double pairwise_sum(std::span<const double> v);

}  // namespace hlslab
