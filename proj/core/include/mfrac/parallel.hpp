#pragma once

#include <cstddef>
#include <functional>

namespace mfrac {

/// Upper bound on worker threads used by internal loops. 0 restores the default
/// (hardware concurrency). Results never depend on this value.
void set_thread_limit(std::size_t limit) noexcept;
std::size_t thread_limit() noexcept;

/// Runs body(begin, end) over contiguous chunks of [0, count). Each index is
/// visited exactly once; bodies must only write state owned by their indices.
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t, std::size_t)>& body,
                  std::size_t min_chunk = 1);

}  // namespace mfrac
