#pragma once
// Deterministic parallel loop: each index is computed independently, results land in fixed slots.

#include <cstddef>
#include <functional>

namespace adsdeform {

// Thread count from ADSDEFORM_THREADS, else hardware concurrency.
unsigned worker_count();
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace adsdeform
