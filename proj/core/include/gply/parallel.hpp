#pragma once

#include <cstddef>
#include <functional>

namespace gply {

/// Worker count used by parallel_for; 0 selects hardware concurrency.
void set_num_threads(unsigned n);
unsigned num_threads();

/// Runs body(i) for i in [0, n). Each index is processed exactly once; callers write only to
/// index-owned slots so results do not depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gply
