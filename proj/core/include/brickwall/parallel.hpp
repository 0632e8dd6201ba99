#pragma once

#include <cstddef>
#include <functional>

namespace brickwall {

/// Runs body(i) for i in [0, n) on up to `workers` threads. Tasks must write
/// disjoint state; results must not depend on which thread runs which index.
/// workers <= 1 runs inline. Blocks until all tasks finish; the first task
/// exception is rethrown.
void parallel_for(std::size_t workers, std::size_t n,
                  const std::function<void(std::size_t)>& body);

}  // namespace brickwall
