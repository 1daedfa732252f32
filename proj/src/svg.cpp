#include "robust_frechet/svg.hpp"

#include <sstream>
#include <vector>

namespace robust_frechet {

namespace {

// Free region of an L2 cell as a polygon sampled on vertical slices.
std::vector<Point2> sampled_region(const CellFreeSpace& cell, int slices) {
  const CellRect& r = cell.rect();
  std::vector<Point2> lower, upper;
  for (int k = 0; k <= slices; ++k) {
    const double x = r.x0 + r.width() * k / slices;
    Interval t = cell.free_interval({x, r.y0}, {x, r.y1});
    if (t.empty()) continue;
    lower.push_back({x, r.y0 + t.lo * r.height()});
    upper.push_back({x, r.y0 + t.hi * r.height()});
  }
  lower.insert(lower.end(), upper.rbegin(), upper.rend());
  return lower;
}

}  // namespace

std::string diagram_to_svg(const DeformedDiagram& diag, const PathSolution* path, double pixels_per_unit) {
  const double w = diag.width() * pixels_per_unit;
  const double h = diag.height() * pixels_per_unit;
  const double pad = 10.0;
  auto px = [&](Point2 p) {
    std::ostringstream s;
    s << pad + p.x * pixels_per_unit << ',' << pad + h - p.y * pixels_per_unit;
    return s.str();
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w + 2 * pad << "\" height=\"" << h + 2 * pad
      << "\">\n";
  out << "<rect x=\"" << pad << "\" y=\"" << pad << "\" width=\"" << w << "\" height=\"" << h
      << "\" fill=\"#b0b0b0\"/>\n";
  for (const CellFreeSpace& cell : diag.cells()) {
    if (cell.empty()) continue;
    std::vector<Point2> poly;
    if (cell.metric() == Metric::L1) poly.assign(cell.polygon().begin(), cell.polygon().end());
    else poly = sampled_region(cell, 128);
    if (poly.size() < 2) continue;
    out << "<polygon fill=\"white\" stroke=\"#303030\" stroke-width=\"1\" points=\"";
    for (Point2 p : poly) out << px(p) << ' ';
    out << "\"/>\n";
  }
  for (double x : diag.column_bounds()) {
    out << "<line x1=\"" << pad + x * pixels_per_unit << "\" y1=\"" << pad << "\" x2=\"" << pad + x * pixels_per_unit
        << "\" y2=\"" << pad + h << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (double y : diag.row_bounds()) {
    out << "<line x1=\"" << pad << "\" y1=\"" << pad + h - y * pixels_per_unit << "\" x2=\"" << pad + w
        << "\" y2=\"" << pad + h - y * pixels_per_unit << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  }
  if (path != nullptr) {
    for (const PathPiece& piece : path->pieces) {
      out << "<line x1=\"" << pad + piece.from.x * pixels_per_unit << "\" y1=\"" << pad + h - piece.from.y * pixels_per_unit
          << "\" x2=\"" << pad + piece.to.x * pixels_per_unit << "\" y2=\"" << pad + h - piece.to.y * pixels_per_unit
          << "\" stroke=\"" << (piece.free ? "#1060d0" : "#d02020") << "\" stroke-width=\"2\"/>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace robust_frechet
