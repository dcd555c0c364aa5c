#pragma once

#include <cstddef>
#include <functional>

namespace coherence {

/// Worker cap: COHERENCE_LEDGER_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
std::size_t max_threads();

/// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
/// write results into slot i so the outcome never depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace coherence
