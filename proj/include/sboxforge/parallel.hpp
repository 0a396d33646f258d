#pragma once

#include <cstddef>
#include <functional>

namespace sboxforge {

/// Worker count for internal parallelism: SBOX_FORGE_THREADS when set to a
/// positive integer, otherwise std::thread::hardware_concurrency() (min 1).
unsigned worker_threads();

/// Runs body(i) for i in [0, count). Each index is visited exactly once;
/// callers write results into pre-sized slots so assembly order is fixed.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace sboxforge
