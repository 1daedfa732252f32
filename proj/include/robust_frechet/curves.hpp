#ifndef ROBUST_FRECHET_CURVES_HPP
#define ROBUST_FRECHET_CURVES_HPP

#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace robust_frechet {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

double euclidean_distance(Point2 a, Point2 b);
double l1_distance(Point2 a, Point2 b);

class CurveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Position on a curve: segment index plus the affine parameter in [0,1]
// along that segment.
struct CurvePoint {
  std::size_t segment_index = 0;
  double local_param = 0.0;
};

// Polygonal curve with cached cumulative arc lengths. Construction merges
// consecutive duplicate vertices, so every stored segment has positive length.
class PolygonalCurve {
 public:
  // Throws CurveError on non-finite coordinates or fewer than two distinct
  // vertices.
  explicit PolygonalCurve(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const { return vertices_; }
  std::span<const double> cumulative_lengths() const { return cum_len_; }

  std::size_t segment_count() const { return vertices_.size() - 1; }
  double length() const { return cum_len_.back(); }
  double segment_length(std::size_t k) const { return cum_len_[k + 1] - cum_len_[k]; }
  Point2 segment_start(std::size_t k) const { return vertices_[k]; }
  Point2 segment_end(std::size_t k) const { return vertices_[k + 1]; }
  Point2 front() const { return vertices_.front(); }
  Point2 back() const { return vertices_.back(); }

  // Segment that holds arc length s; ties at a vertex go to the later segment
  // except at the very end.
  std::size_t segment_at_arclength(double s) const;

  Point2 at_arclength(double s) const;

 private:
  std::vector<Point2> vertices_;
  std::vector<double> cum_len_;
};

double curve_length(const PolygonalCurve& c);

// Throws std::out_of_range for a bad segment index or a parameter outside
// [0,1].
Point2 point_at(const PolygonalCurve& c, CurvePoint p);

PolygonalCurve load_curve(const std::filesystem::path& path);
PolygonalCurve parse_curve_json(const std::string& text);
PolygonalCurve parse_curve_text(const std::string& text);

// Writes JSON when the extension is .json, whitespace text otherwise.
void save_curve(const PolygonalCurve& c, const std::filesystem::path& path);
std::string curve_to_json(const PolygonalCurve& c);

}  // namespace robust_frechet

#endif  // ROBUST_FRECHET_CURVES_HPP
