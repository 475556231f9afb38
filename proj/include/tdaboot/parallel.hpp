#pragma once

#include <cstddef>
#include <functional>

namespace tdaboot {

/// Worker count used by parallel_for. TDABOOT_THREADS, when set, wins over the
/// value passed here. Zero means hardware concurrency.
void set_thread_count(std::size_t threads);
std::size_t thread_count();

/// Runs body(i) for i in [0, n). Nested calls run serially on the calling
/// thread. If any task throws, the exception of the lowest failing index is
/// rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace tdaboot
