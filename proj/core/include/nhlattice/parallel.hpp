// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace nhlattice {

/// Worker cap: NH_LATTICE_THREADS when set (integer >= 1, otherwise
/// ValidationError), else the hardware concurrency.
int thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = thread_count()).
/// Each index is executed exactly once; results must be written to distinct slots.
/// The first exception thrown by any body is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, int threads = 0);

}  // namespace nhlattice
