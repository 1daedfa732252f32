#ifndef ROBUST_FRECHET_SVG_HPP
#define ROBUST_FRECHET_SVG_HPP

#include <string>

#include "robust_frechet/freespace.hpp"
#include "robust_frechet/pathsearch.hpp"

namespace robust_frechet {

// Forbidden space shaded, free regions white, cell grid and, when given, the
// path with its forbidden pieces highlighted.
std::string diagram_to_svg(const DeformedDiagram& diag, const PathSolution* path = nullptr,
                           double pixels_per_unit = 120.0);

}  // namespace robust_frechet

#endif  // ROBUST_FRECHET_SVG_HPP
