#include "robust_frechet/curves.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace robust_frechet {

double euclidean_distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

double l1_distance(Point2 a, Point2 b) { return std::abs(a.x - b.x) + std::abs(a.y - b.y); }

PolygonalCurve::PolygonalCurve(std::vector<Point2> vertices) {
  for (const Point2& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw CurveError("curve has a non-finite coordinate");
    }
  }
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  if (vertices.size() < 2) {
    throw CurveError("curve needs at least two distinct vertices");
  }
  vertices_ = std::move(vertices);
  cum_len_.resize(vertices_.size());
  cum_len_[0] = 0.0;
  for (std::size_t k = 1; k < vertices_.size(); ++k) {
    cum_len_[k] = cum_len_[k - 1] + euclidean_distance(vertices_[k - 1], vertices_[k]);
  }
}

std::size_t PolygonalCurve::segment_at_arclength(double s) const {
  auto it = std::upper_bound(cum_len_.begin(), cum_len_.end(), s);
  std::size_t idx = it == cum_len_.begin() ? 0 : static_cast<std::size_t>(it - cum_len_.begin()) - 1;
  return std::min(idx, segment_count() - 1);
}

Point2 PolygonalCurve::at_arclength(double s) const {
  s = std::clamp(s, 0.0, length());
  std::size_t k = segment_at_arclength(s);
  double t = (s - cum_len_[k]) / segment_length(k);
  return point_at(*this, {k, std::clamp(t, 0.0, 1.0)});
}

double curve_length(const PolygonalCurve& c) { return c.length(); }

Point2 point_at(const PolygonalCurve& c, CurvePoint p) {
  if (p.segment_index >= c.segment_count()) {
    throw std::out_of_range("segment index out of range");
  }
  if (!(p.local_param >= 0.0 && p.local_param <= 1.0)) {
    throw std::out_of_range("local parameter outside [0,1]");
  }
  Point2 a = c.segment_start(p.segment_index);
  Point2 b = c.segment_end(p.segment_index);
  if (p.local_param == 0.0) return a;
  if (p.local_param == 1.0) return b;
  return {a.x + p.local_param * (b.x - a.x), a.y + p.local_param * (b.y - a.y)};
}

PolygonalCurve parse_curve_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CurveError(std::string("malformed curve JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array()) {
    throw CurveError("curve JSON must be an object with a \"points\" array");
  }
  std::vector<Point2> pts;
  for (const auto& item : doc["points"]) {
    if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number()) {
      throw CurveError("each point must be a [x, y] number pair");
    }
    pts.push_back({item[0].get<double>(), item[1].get<double>()});
  }
  return PolygonalCurve(std::move(pts));
}

PolygonalCurve parse_curve_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Point2> pts;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    Point2 p;
    std::string rest;
    if (!(ls >> p.x >> p.y) || (ls >> rest)) {
      throw CurveError("malformed curve text at line " + std::to_string(lineno));
    }
    pts.push_back(p);
  }
  return PolygonalCurve(std::move(pts));
}

PolygonalCurve load_curve(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CurveError("cannot open curve file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  if (path.extension() == ".json") return parse_curve_json(buf.str());
  return parse_curve_text(buf.str());
}

std::string curve_to_json(const PolygonalCurve& c) {
  nlohmann::json pts = nlohmann::json::array();
  for (const Point2& p : c.vertices()) pts.push_back({p.x, p.y});
  return nlohmann::json{{"points", pts}}.dump();
}

void save_curve(const PolygonalCurve& c, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw CurveError("cannot write curve file " + path.string());
  if (path.extension() == ".json") {
    out << curve_to_json(c) << '\n';
    return;
  }
  out.precision(17);
  for (const Point2& p : c.vertices()) out << p.x << ' ' << p.y << '\n';
}

}  // namespace robust_frechet
