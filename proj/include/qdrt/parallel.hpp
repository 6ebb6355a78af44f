// SPDX-License-Identifier: Apache-2.0
//
// qdrt — quasi-deterministic ray tracing for street-canyon radio channels

#pragma once

#include <cstddef>
#include <functional>

namespace qdrt {

/// Maps a requested worker count to an effective one (0 -> all cores).
unsigned resolve_threads(unsigned requested);

/// Runs body(i) for i in [0, count) on `threads` workers (0 -> all cores).
/// Work is split into contiguous index blocks. The body must only write to
/// per-index state; under that contract results do not depend on the worker
/// count. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

} // namespace qdrt
