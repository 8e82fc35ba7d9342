#pragma once

#include <cstddef>
#include <functional>

namespace emptyspace {

//! Worker count: hardware concurrency, capped by EMPTYSPACE_THREADS when set.
int thread_count();

//---------------------------------------------------------------------------//
/*!
 * Run body(i) for i in [0, n) on up to thread_count() threads.
 *
 * Work is handed out by index; callers write results into slot i so that the
 * outcome never depends on scheduling. The first exception thrown by any
 * task is rethrown on the calling thread.
 */
void parallel_for(std::size_t n, std::function<void(std::size_t)> const& body);

}  // namespace emptyspace
