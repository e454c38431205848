#pragma once

#include <cstddef>
#include <functional>

namespace mrplab {

unsigned resolve_threads(unsigned requested);

// Runs body(i) for i in [0, count). Each index runs exactly once; callers write
// results into slot i, so the outcome does not depend on the thread count.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace mrplab
