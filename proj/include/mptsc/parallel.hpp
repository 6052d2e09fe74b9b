#pragma once

#include <cstddef>
#include <functional>

namespace mptsc {

struct ExecOptions {
    unsigned threads = 0;  ///< 0 = hardware concurrency

    unsigned resolved_threads() const noexcept;
};

/// Runs body(0..count-1) on up to `threads` workers. Each index runs exactly
/// once; callers write results into per-index slots so the outcome does not
/// depend on scheduling. If any body throws, the exception from the lowest
/// failing index is rethrown after all workers stop.
void parallel_for(std::size_t count, const ExecOptions& exec, const std::function<void(std::size_t)>& body);

}  // namespace mptsc
