#pragma once

#include <cstddef>
#include <functional>

namespace szego {

// Global worker count used by parallel_for. 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for i in [0, count); workers pull indices from a shared
// counter. Results must not depend on execution order; exceptions from
// workers are rethrown on the calling thread. Nested calls run serially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace szego
