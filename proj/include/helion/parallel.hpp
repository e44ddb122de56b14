#ifndef HELION_PARALLEL_HPP
#define HELION_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace helion {

// Worker count: hardware concurrency, capped by the HELION_THREADS
// environment variable when it is set to a positive integer.
unsigned thread_budget();

// Runs fn(i) for every i in [0, count).  Work items must be independent and
// write only to their own index's slots; under that contract the result is
// identical for any thread count, so parallelism never perturbs outputs.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace helion

#endif
