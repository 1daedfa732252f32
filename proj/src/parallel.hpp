#ifndef ROBUST_FRECHET_SRC_PARALLEL_HPP
#define ROBUST_FRECHET_SRC_PARALLEL_HPP

#include <cstddef>

#include "robust_frechet/execution.hpp"

namespace robust_frechet::detail {

// Runs f(k) for k in [0, n). The body must not throw and must only write
// state owned by index k, so both paths produce identical results.
template <class F>
void for_each_index(std::size_t n, Execution exec, F&& f) {
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(n); ++k) f(static_cast<std::size_t>(k));
  } else {
    for (std::size_t k = 0; k < n; ++k) f(k);
  }
}

}  // namespace robust_frechet::detail

#endif  // ROBUST_FRECHET_SRC_PARALLEL_HPP
