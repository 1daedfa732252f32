#ifndef ROBUST_FRECHET_FREESPACE_HPP
#define ROBUST_FRECHET_FREESPACE_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "robust_frechet/curves.hpp"
#include "robust_frechet/execution.hpp"

namespace robust_frechet {

enum class Metric { L1, L2 };
enum class PointClass { Free, Forbidden };

const char* to_string(Metric m);

class Leash {
 public:
  // Throws std::invalid_argument unless epsilon is finite and >= 0.
  explicit Leash(double epsilon);
  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
};

struct Segment {
  Point2 start;
  Point2 end;
  double length() const { return euclidean_distance(start, end); }
};

// Closed interval [lo, hi]; empty when lo > hi.
struct Interval {
  double lo = 1.0;
  double hi = 0.0;

  static Interval none() { return {1.0, 0.0}; }
  static Interval all() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }
  bool empty() const { return lo > hi; }
  double length() const { return empty() ? 0.0 : hi - lo; }
  Interval intersect(Interval o) const { return {std::max(lo, o.lo), std::min(hi, o.hi)}; }
};

// Inclusive index range; empty when first > last.
struct IndexRange {
  std::size_t first = 1;
  std::size_t last = 0;
  bool empty() const { return first > last; }
};

// Rectangle of one parameter cell in deformed (arc-length) coordinates.
struct CellRect {
  std::size_t i = 0;
  std::size_t j = 0;
  double x0 = 0.0;
  double x1 = 0.0;
  double y0 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(Point2 p, double tol = 0.0) const {
    return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
  }
};

// Q(x,y) = a x^2 + b xy + c y^2 + d x + e y + f in cell-local coordinates
// (x measured from the cell's left side, y from its bottom side).
struct QuadraticForm {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
  double operator()(double x, double y) const { return a * x * x + b * x * y + c * y * y + d * x + e * y + f; }
};

// Free space of one parameter cell for a fixed leash. A point (x, y) of the
// cell matches T1 at arc length x and T2 at arc length y; it is free iff the
// matched points are within epsilon under the cell's metric. The free set is
// convex: an ellipse (or strip) clipped to the rectangle under L2, a convex
// polygon under L1.
class CellFreeSpace {
 public:
  CellFreeSpace() = default;
  static CellFreeSpace make_l2(const Segment& seg1, const Segment& seg2, Leash eps, const CellRect& rect);
  static CellFreeSpace make_l1(const Segment& seg1, const Segment& seg2, Leash eps, const CellRect& rect);

  Metric metric() const { return metric_; }
  const CellRect& rect() const { return rect_; }
  double epsilon() const { return eps_; }
  bool empty() const { return empty_; }
  bool full() const { return full_; }

  // Local-coordinate quadratic form; meaningful for L2 cells.
  const QuadraticForm& quadratic() const { return quad_; }
  // Counterclockwise polygon in diagram coordinates; meaningful for L1 cells.
  std::span<const Point2> polygon() const { return polygon_; }

  // Difference vector between the matched curve points at diagram point p.
  Point2 offset_at(Point2 p) const;
  // L2: |offset|^2 - eps^2. L1: |offset|_1 - eps. Nonpositive means free.
  double residual(Point2 p) const;
  double tolerance() const { return tol_; }
  double length_scale() const { return length_scale_; }
  bool is_free(Point2 p) const { return residual(p) <= tol_; }

  // Parameter range t of the free part of p + t (q - p), unclipped (may be
  // unbounded for L1 / degenerate directions).
  Interval free_parameter_range(Point2 p, Point2 q) const;
  // Same, clipped to [0, 1].
  Interval free_interval(Point2 p, Point2 q) const;
  // Parameters t in [0,1] where the segment meets the boundary of the free
  // region (the ellipse or polygon edge, not the cell rectangle).
  std::vector<double> boundary_crossings(Point2 p, Point2 q) const;

 private:
  void init_common(const Segment& seg1, const Segment& seg2, Leash eps, const CellRect& rect);

  Metric metric_ = Metric::L2;
  CellRect rect_;
  Point2 start_offset_;  // seg1.start - seg2.start
  Point2 dir1_;          // unit direction of seg1
  Point2 dir2_;          // unit direction of seg2
  double eps_ = 0.0;
  double length_scale_ = 1.0;
  double tol_ = 0.0;
  bool empty_ = false;
  bool full_ = false;
  QuadraticForm quad_;
  std::vector<Point2> polygon_;
};

// Cells built on a rectangle anchored at the origin when none is given.
CellFreeSpace build_cell_l2(const Segment& seg1, const Segment& seg2, Leash eps);
CellFreeSpace build_cell_l2(const Segment& seg1, const Segment& seg2, Leash eps, const CellRect& rect);
CellFreeSpace build_cell_l1(const Segment& seg1, const Segment& seg2, Leash eps);
CellFreeSpace build_cell_l1(const Segment& seg1, const Segment& seg2, Leash eps, const CellRect& rect);

class DeformedDiagram {
 public:
  DeformedDiagram(PolygonalCurve t1, PolygonalCurve t2, Leash eps, Metric metric,
                  Execution exec = Execution::parallel);

  const PolygonalCurve& curve_a() const { return t1_; }
  const PolygonalCurve& curve_b() const { return t2_; }
  Leash leash() const { return eps_; }
  Metric metric() const { return metric_; }

  std::size_t columns() const { return t1_.segment_count(); }
  std::size_t rows() const { return t2_.segment_count(); }
  std::span<const double> column_bounds() const { return t1_.cumulative_lengths(); }
  std::span<const double> row_bounds() const { return t2_.cumulative_lengths(); }
  double width() const { return t1_.length(); }
  double height() const { return t2_.length(); }
  Point2 source() const { return {0.0, 0.0}; }
  Point2 target() const { return {width(), height()}; }
  // Absolute tolerance for coordinate comparisons in this diagram.
  double coord_tolerance() const { return 1e-12 * (width() + height()); }

  const CellFreeSpace& cell(std::size_t i, std::size_t j) const { return cells_[i * rows() + j]; }
  std::span<const CellFreeSpace> cells() const { return cells_; }

  // Columns (rows) whose closed range contains x (y): one, or two on a
  // shared boundary. Empty when outside the diagram.
  std::vector<std::size_t> columns_at(double x) const;
  IndexRange column_range(double x) const;
  IndexRange row_range(double y) const;
  std::vector<std::size_t> rows_at(double y) const;
  std::vector<const CellFreeSpace*> cells_at(Point2 p) const;

  bool contains(Point2 p) const;

  // Free parameter range of segment pq, which must lie in one closed cell.
  // On a shared cell boundary the widest answer over the adjacent cells is
  // used.
  Interval segment_free_interval(Point2 p, Point2 q) const;
  // Length of the part of pq outside free space, in the L1 metric.
  double forbidden_length(Point2 p, Point2 q) const;

 private:
  PolygonalCurve t1_;
  PolygonalCurve t2_;
  Leash eps_;
  Metric metric_;
  std::vector<CellFreeSpace> cells_;
};

DeformedDiagram build_diagram(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps, Metric metric,
                              Execution exec = Execution::parallel);

// Throws std::out_of_range when p is outside the diagram rectangle.
PointClass classify_point(const DeformedDiagram& diag, Point2 p);

struct AxisLine {
  enum class Orientation { vertical, horizontal };
  Orientation orientation;
  double position;  // x of a vertical line, y of a horizontal line

  static AxisLine vertical(double x) { return {Orientation::vertical, x}; }
  static AxisLine horizontal(double y) { return {Orientation::horizontal, y}; }
};

// Crossings of an axis-parallel line with the free-space boundary inside the
// cell. A tangent line yields a single point.
std::vector<Point2> line_ellipse_intersections(const CellFreeSpace& cell, AxisLine line);

}  // namespace robust_frechet

#endif  // ROBUST_FRECHET_FREESPACE_HPP
