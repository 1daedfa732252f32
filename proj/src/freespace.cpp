#include "robust_frechet/freespace.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace robust_frechet {

namespace {

double norm(Point2 v) { return std::hypot(v.x, v.y); }

Point2 unit(const Segment& s) {
  double len = s.length();
  if (!(len > 0.0)) throw std::invalid_argument("degenerate segment");
  return {(s.end.x - s.start.x) / len, (s.end.y - s.start.y) / len};
}

double point_segment_distance(Point2 p, const Segment& s) {
  Point2 d = s.end - s.start;
  double len2 = dot(d, d);
  double t = len2 > 0.0 ? std::clamp(dot(p - s.start, d) / len2, 0.0, 1.0) : 0.0;
  return euclidean_distance(p, s.start + t * d);
}

double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

// Proper crossing only; touching and collinear overlap show up as a zero
// point-segment distance.
bool segments_cross(const Segment& a, const Segment& b) {
  Point2 r = a.end - a.start;
  Point2 s = b.end - b.start;
  double d1 = cross(r, b.start - a.start);
  double d2 = cross(r, b.end - a.start);
  double d3 = cross(s, a.start - b.start);
  double d4 = cross(s, a.end - b.start);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

double segment_distance(const Segment& a, const Segment& b) {
  if (segments_cross(a, b)) return 0.0;
  return std::min({point_segment_distance(a.start, b), point_segment_distance(a.end, b),
                   point_segment_distance(b.start, a), point_segment_distance(b.end, a)});
}

constexpr std::array<std::array<double, 2>, 4> kSigns{{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

// Sutherland-Hodgman clip of a convex polygon by g(p) = ka*x + kb*y + c <= 0.
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, double ka, double kb, double c, double tol) {
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) {
    Point2 cur = poly[k];
    Point2 nxt = poly[(k + 1) % n];
    double gc = ka * cur.x + kb * cur.y + c;
    double gn = ka * nxt.x + kb * nxt.y + c;
    bool in_c = gc <= tol;
    bool in_n = gn <= tol;
    if (in_c) out.push_back(cur);
    if (in_c != in_n && std::abs(gc - gn) > 0.0) {
      double t = gc / (gc - gn);
      if (t > 0.0 && t < 1.0) out.push_back(cur + t * (nxt - cur));
    }
  }
  std::vector<Point2> dedup;
  for (const Point2& p : out) {
    if (dedup.empty() || euclidean_distance(dedup.back(), p) > 1e-14 * (1.0 + std::abs(p.x) + std::abs(p.y))) {
      dedup.push_back(p);
    }
  }
  while (dedup.size() > 1 && euclidean_distance(dedup.front(), dedup.back()) <=
                                 1e-14 * (1.0 + std::abs(dedup.back().x) + std::abs(dedup.back().y))) {
    dedup.pop_back();
  }
  return dedup;
}

}  // namespace

const char* to_string(Metric m) { return m == Metric::L1 ? "L1" : "L2"; }

Leash::Leash(double epsilon) : epsilon_(epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0.0) {
    throw std::invalid_argument("leash length must be finite and nonnegative");
  }
}

void CellFreeSpace::init_common(const Segment& seg1, const Segment& seg2, Leash eps, const CellRect& rect) {
  rect_ = rect;
  dir1_ = unit(seg1);
  dir2_ = unit(seg2);
  start_offset_ = seg1.start - seg2.start;
  eps_ = eps.epsilon();
  length_scale_ = norm(start_offset_) + rect.width() + rect.height() + eps_;
}

CellFreeSpace CellFreeSpace::make_l2(const Segment& seg1, const Segment& seg2, Leash eps, const CellRect& rect) {
  CellFreeSpace cell;
  cell.metric_ = Metric::L2;
  cell.init_common(seg1, seg2, eps, rect);
  cell.tol_ = 1e-9 * cell.length_scale_ * cell.length_scale_;

  const Point2 s0 = cell.start_offset_;
  const Point2 u = cell.dir1_;
  const Point2 v = cell.dir2_;
  cell.quad_ = {dot(u, u), -2.0 * dot(u, v), dot(v, v), 2.0 * dot(s0, u), -2.0 * dot(s0, v),
                dot(s0, s0) - cell.eps_ * cell.eps_};

  // The squared distance is convex over the cell: its minimum is the segment
  // distance and its maximum sits at a corner.
  double dmin = segment_distance(seg1, seg2);
  cell.empty_ = (dmin - cell.eps_) * (dmin + cell.eps_) > cell.tol_;
  cell.full_ = true;
  for (Point2 corner : {Point2{rect.x0, rect.y0}, Point2{rect.x1, rect.y0}, Point2{rect.x0, rect.y1},
                        Point2{rect.x1, rect.y1}}) {
    if (!cell.is_free(corner)) cell.full_ = false;
  }
  return cell;
}

CellFreeSpace CellFreeSpace::make_l1(const Segment& seg1, const Segment& seg2, Leash eps, const CellRect& rect) {
  CellFreeSpace cell;
  cell.metric_ = Metric::L1;
  cell.init_common(seg1, seg2, eps, rect);
  cell.tol_ = 1e-9 * cell.length_scale_;

  std::vector<Point2> poly{{0.0, 0.0}, {rect.width(), 0.0}, {rect.width(), rect.height()}, {0.0, rect.height()}};
  const double clip_tol = 1e-12 * cell.length_scale_;
  for (const auto& s : kSigns) {
    // s . (s0 + a u - b v) - eps <= 0
    double ka = s[0] * cell.dir1_.x + s[1] * cell.dir1_.y;
    double kb = -(s[0] * cell.dir2_.x + s[1] * cell.dir2_.y);
    double c = s[0] * cell.start_offset_.x + s[1] * cell.start_offset_.y - cell.eps_;
    poly = clip_halfplane(poly, ka, kb, c, clip_tol);
    if (poly.empty()) break;
  }
  for (Point2& p : poly) p = {p.x + rect.x0, p.y + rect.y0};
  cell.polygon_ = std::move(poly);
  cell.empty_ = cell.polygon_.empty();
  cell.full_ = true;
  for (Point2 corner : {Point2{rect.x0, rect.y0}, Point2{rect.x1, rect.y0}, Point2{rect.x0, rect.y1},
                        Point2{rect.x1, rect.y1}}) {
    if (!cell.is_free(corner)) cell.full_ = false;
  }
  return cell;
}

Point2 CellFreeSpace::offset_at(Point2 p) const {
  double a = p.x - rect_.x0;
  double b = p.y - rect_.y0;
  return {start_offset_.x + a * dir1_.x - b * dir2_.x, start_offset_.y + a * dir1_.y - b * dir2_.y};
}

double CellFreeSpace::residual(Point2 p) const {
  Point2 d = offset_at(p);
  if (metric_ == Metric::L1) return std::abs(d.x) + std::abs(d.y) - eps_;
  double r = norm(d);
  return (r - eps_) * (r + eps_);
}

Interval CellFreeSpace::free_parameter_range(Point2 p, Point2 q) const {
  const Point2 e0 = offset_at(p);
  const double dx = q.x - p.x;
  const double dy = q.y - p.y;
  const Point2 e1{dx * dir1_.x - dy * dir2_.x, dx * dir1_.y - dy * dir2_.y};

  if (metric_ == Metric::L1) {
    Interval range = Interval::all();
    const double k_floor = 1e-15 * (std::abs(dx) + std::abs(dy));
    for (const auto& s : kSigns) {
      double k = s[0] * e1.x + s[1] * e1.y;
      double c = s[0] * e0.x + s[1] * e0.y - eps_;
      if (std::abs(k) <= k_floor) {
        if (c > tol_) return Interval::none();
        continue;
      }
      double t = -c / k;
      if (k > 0) range.hi = std::min(range.hi, t);
      else range.lo = std::max(range.lo, t);
    }
    // Opposing constraints meeting in a single point (measure-zero free set).
    if (range.empty() && range.lo - range.hi <= 1e-12) {
      double mid = 0.5 * (range.lo + range.hi);
      return {mid, mid};
    }
    return range;
  }

  const double a = dot(e1, e1);
  const double bh = dot(e0, e1);
  const double r0 = norm(e0);
  const double c = (r0 - eps_) * (r0 + eps_);
  const double seg_scale = std::abs(dx) + std::abs(dy);
  if (a <= 1e-28 * (length_scale_ * length_scale_) || seg_scale == 0.0) {
    // Direction along which the distance does not change to first order.
    if (std::abs(bh) <= 1e-14 * length_scale_ * (std::sqrt(a) + 1e-300)) {
      return c <= tol_ ? Interval::all() : Interval::none();
    }
    double t = -c / (2.0 * bh);
    return bh > 0 ? Interval{-std::numeric_limits<double>::infinity(), t}
                  : Interval{t, std::numeric_limits<double>::infinity()};
  }
  const double disc = bh * bh - a * c;
  const double coef_scale = bh * bh + a * std::abs(c) + a * eps_ * eps_;
  if (disc < 0.0) {
    if (-disc <= 1e-12 * coef_scale) {
      double t = -bh / a;
      return {t, t};
    }
    return Interval::none();
  }
  const double sq = std::sqrt(disc);
  const double h = -(bh + std::copysign(sq, bh));
  if (h == 0.0) return {0.0, 0.0};
  double r1 = h / a;
  double r2 = c / h;
  return {std::min(r1, r2), std::max(r1, r2)};
}

Interval CellFreeSpace::free_interval(Point2 p, Point2 q) const {
  Interval r = free_parameter_range(p, q).intersect({0.0, 1.0});
  return r;
}

std::vector<double> CellFreeSpace::boundary_crossings(Point2 p, Point2 q) const {
  std::vector<double> out;
  Interval r = free_parameter_range(p, q);
  if (r.empty()) return out;
  constexpr double kTol = 1e-12;
  for (double t : {r.lo, r.hi}) {
    if (!std::isfinite(t) || t < -kTol || t > 1.0 + kTol) continue;
    t = std::clamp(t, 0.0, 1.0);
    if (out.empty() || out.back() != t) out.push_back(t);
  }
  return out;
}

CellFreeSpace build_cell_l2(const Segment& seg1, const Segment& seg2, Leash eps) {
  return build_cell_l2(seg1, seg2, eps, CellRect{0, 0, 0.0, seg1.length(), 0.0, seg2.length()});
}
CellFreeSpace build_cell_l2(const Segment& seg1, const Segment& seg2, Leash eps, const CellRect& rect) {
  return CellFreeSpace::make_l2(seg1, seg2, eps, rect);
}
CellFreeSpace build_cell_l1(const Segment& seg1, const Segment& seg2, Leash eps) {
  return build_cell_l1(seg1, seg2, eps, CellRect{0, 0, 0.0, seg1.length(), 0.0, seg2.length()});
}
CellFreeSpace build_cell_l1(const Segment& seg1, const Segment& seg2, Leash eps, const CellRect& rect) {
  return CellFreeSpace::make_l1(seg1, seg2, eps, rect);
}

DeformedDiagram::DeformedDiagram(PolygonalCurve t1, PolygonalCurve t2, Leash eps, Metric metric, Execution exec)
    : t1_(std::move(t1)), t2_(std::move(t2)), eps_(eps), metric_(metric) {
  const std::size_t n1 = t1_.segment_count();
  const std::size_t n2 = t2_.segment_count();
  const auto cb = t1_.cumulative_lengths();
  const auto rb = t2_.cumulative_lengths();
  auto make = [&](std::size_t k) {
    std::size_t i = k / n2;
    std::size_t j = k % n2;
    Segment s1{t1_.segment_start(i), t1_.segment_end(i)};
    Segment s2{t2_.segment_start(j), t2_.segment_end(j)};
    CellRect rect{i, j, cb[i], cb[i + 1], rb[j], rb[j + 1]};
    return metric_ == Metric::L2 ? CellFreeSpace::make_l2(s1, s2, eps_, rect)
                                 : CellFreeSpace::make_l1(s1, s2, eps_, rect);
  };
  const std::size_t total = n1 * n2;
  cells_.resize(total);
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(total); ++k) {
      cells_[static_cast<std::size_t>(k)] = make(static_cast<std::size_t>(k));
    }
  } else {
    for (std::size_t k = 0; k < total; ++k) cells_[k] = make(k);
  }
}

namespace {

IndexRange slab_range(std::span<const double> bounds, double v, double tol) {
  const std::size_t n = bounds.size() - 1;
  if (v < bounds.front() - tol || v > bounds.back() + tol) return {};
  auto it = std::upper_bound(bounds.begin(), bounds.end(), v);
  std::size_t k = it == bounds.begin() ? 0 : static_cast<std::size_t>(it - bounds.begin()) - 1;
  k = std::min(k, n - 1);
  IndexRange r{k, k};
  if (k > 0 && std::abs(v - bounds[k]) <= tol) r.first = k - 1;
  if (k + 1 < n && std::abs(v - bounds[k + 1]) <= tol) r.last = k + 1;
  return r;
}

std::vector<std::size_t> expand(IndexRange r) {
  std::vector<std::size_t> out;
  for (std::size_t k = r.first; !r.empty() && k <= r.last; ++k) out.push_back(k);
  return out;
}

}  // namespace

IndexRange DeformedDiagram::column_range(double x) const {
  return slab_range(column_bounds(), x, coord_tolerance());
}

IndexRange DeformedDiagram::row_range(double y) const { return slab_range(row_bounds(), y, coord_tolerance()); }

std::vector<std::size_t> DeformedDiagram::columns_at(double x) const { return expand(column_range(x)); }

std::vector<std::size_t> DeformedDiagram::rows_at(double y) const { return expand(row_range(y)); }

std::vector<const CellFreeSpace*> DeformedDiagram::cells_at(Point2 p) const {
  std::vector<const CellFreeSpace*> out;
  IndexRange cr = column_range(p.x);
  IndexRange rr = row_range(p.y);
  if (cr.empty() || rr.empty()) return out;
  for (std::size_t i = cr.first; i <= cr.last; ++i) {
    for (std::size_t j = rr.first; j <= rr.last; ++j) out.push_back(&cell(i, j));
  }
  return out;
}

bool DeformedDiagram::contains(Point2 p) const {
  double tol = coord_tolerance();
  return p.x >= -tol && p.y >= -tol && p.x <= width() + tol && p.y <= height() + tol;
}

Interval DeformedDiagram::segment_free_interval(Point2 p, Point2 q) const {
  Point2 mid{0.5 * (p.x + q.x), 0.5 * (p.y + q.y)};
  IndexRange cr = column_range(mid.x);
  IndexRange rr = row_range(mid.y);
  if (cr.empty() || rr.empty()) throw std::out_of_range("segment outside the diagram");
  Interval best = Interval::none();
  double best_len = -std::numeric_limits<double>::infinity();
  for (std::size_t i = cr.first; i <= cr.last; ++i) {
    for (std::size_t j = rr.first; j <= rr.last; ++j) {
      Interval r = cell(i, j).free_interval(p, q);
      double len = r.hi - r.lo;
      if (len > best_len) {
        best_len = len;
        best = r;
      }
    }
  }
  return best;
}

double DeformedDiagram::forbidden_length(Point2 p, Point2 q) const {
  double l1 = l1_distance(p, q);
  if (l1 == 0.0) return 0.0;
  Interval r = segment_free_interval(p, q);
  return l1 * (1.0 - r.length());
}

DeformedDiagram build_diagram(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps, Metric metric,
                              Execution exec) {
  return DeformedDiagram(t1, t2, eps, metric, exec);
}

PointClass classify_point(const DeformedDiagram& diag, Point2 p) {
  IndexRange cr = diag.column_range(p.x);
  IndexRange rr = diag.row_range(p.y);
  if (cr.empty() || rr.empty()) throw std::out_of_range("point outside the diagram");
  for (std::size_t i = cr.first; i <= cr.last; ++i) {
    for (std::size_t j = rr.first; j <= rr.last; ++j) {
      if (diag.cell(i, j).is_free(p)) return PointClass::Free;
    }
  }
  return PointClass::Forbidden;
}

std::vector<Point2> line_ellipse_intersections(const CellFreeSpace& cell, AxisLine line) {
  const CellRect& r = cell.rect();
  Point2 p, q;
  if (line.orientation == AxisLine::Orientation::vertical) {
    if (line.position < r.x0 || line.position > r.x1) return {};
    p = {line.position, r.y0};
    q = {line.position, r.y1};
  } else {
    if (line.position < r.y0 || line.position > r.y1) return {};
    p = {r.x0, line.position};
    q = {r.x1, line.position};
  }
  std::vector<Point2> out;
  for (double t : cell.boundary_crossings(p, q)) {
    out.push_back(p + t * (q - p));
  }
  return out;
}

}  // namespace robust_frechet
