#ifndef ROBUST_FRECHET_EXECUTION_HPP
#define ROBUST_FRECHET_EXECUTION_HPP

namespace robust_frechet {

// Kernels with a data-parallel inner loop take this switch. The serial path
// is the reference the parallel path is tested against; both produce
// identical output.
enum class Execution { serial, parallel };

}  // namespace robust_frechet

#endif  // ROBUST_FRECHET_EXECUTION_HPP
