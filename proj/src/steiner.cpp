#include "robust_frechet/steiner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "parallel.hpp"

namespace robust_frechet {

BoundaryPointSet::BoundaryPointSet(const CellFreeSpace& region, std::vector<Point2> points)
    : region_(&region), points_(std::move(points)) {
  const double coord_tol = 1e-9 * region.length_scale();
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const Point2 p = points_[k];
    if (!region.rect().contains(p, coord_tol)) {
      throw std::invalid_argument("point " + std::to_string(k) + " lies outside the cell");
    }
    if (std::abs(region.residual(p)) > region.tolerance()) {
      throw std::invalid_argument("point " + std::to_string(k) + " is not on the free-space boundary");
    }
  }
}

BoundaryPointSet BoundaryPointSet::trusted(const CellFreeSpace& region, std::vector<Point2> points) {
  BoundaryPointSet ps;
  ps.region_ = &region;
  ps.points_ = std::move(points);
  return ps;
}

namespace {

class GPrimeBuilder {
 public:
  GPrimeBuilder(const CellFreeSpace& region, SteinerGraph& g)
      : region_(region), g_(g), tol_(1e-12 * (region.rect().width() + region.rect().height())) {}

  void run(std::vector<std::size_t> idx, int depth) {
    if (idx.size() < 2) return;
    const std::size_t med = idx[idx.size() / 2];
    const double m = g_.vertices[med].x;

    // Intersection of the median line with the region, widened by input
    // points sitting on the line so rounding never leaves it empty.
    const CellRect& r = region_.rect();
    Interval t = region_.free_interval({m, r.y0}, {m, r.y1});
    double ylo = std::numeric_limits<double>::infinity();
    double yhi = -ylo;
    if (!t.empty()) {
      ylo = r.y0 + t.lo * (r.y1 - r.y0);
      yhi = r.y0 + t.hi * (r.y1 - r.y0);
    }
    std::vector<std::pair<double, std::size_t>> chain;
    std::vector<std::size_t> left, right, above, below;
    for (std::size_t k : idx) {
      const Point2 p = g_.vertices[k];
      if (p.x == m) {
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
        chain.push_back({p.y, k});
      } else if (p.x < m) {
        left.push_back(k);
      } else {
        right.push_back(k);
      }
    }
    // Chain node at height y, created on first use.
    std::unordered_map<double, std::size_t> at_height;
    for (const auto& [y, k] : chain) at_height.emplace(y, k);
    auto chain_node = [&](double y) {
      auto [it, inserted] = at_height.emplace(y, 0);
      if (inserted) {
        it->second = add_vertex({m, y}, depth);
        chain.push_back({y, it->second});
      }
      return it->second;
    };
    chain_node(yhi);
    chain_node(ylo);

    for (std::size_t k : idx) {
      const Point2 p = g_.vertices[k];
      if (p.x == m) continue;
      if (p.y > yhi + tol_) {
        above.push_back(k);
      } else if (p.y < ylo - tol_) {
        below.push_back(k);
      } else {
        add_edge(k, chain_node(p.y));
      }
    }
    std::sort(chain.begin(), chain.end());
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) add_edge(chain[k].second, chain[k + 1].second);

    for (std::size_t k : above) {
      const Point2 p = g_.vertices[k];
      if (p.x < m) continue;
      auto it = std::upper_bound(chain.begin(), chain.end(), std::make_pair(p.y, std::numeric_limits<std::size_t>::max()));
      add_edge(std::prev(it)->second, k);
    }
    for (std::size_t k : below) {
      const Point2 p = g_.vertices[k];
      if (p.x > m) continue;
      auto it = std::lower_bound(chain.begin(), chain.end(), std::make_pair(p.y, std::size_t{0}));
      add_edge(k, it->second);
    }
    run(std::move(left), depth + 1);
    run(std::move(right), depth + 1);
  }

 private:
  std::size_t add_vertex(Point2 p, int depth) {
    g_.vertices.push_back(p);
    g_.depth.push_back(depth);
    return g_.vertices.size() - 1;
  }

  // Directs the edge along dominance; coincident points go from the lower id.
  void add_edge(std::size_t u, std::size_t v) {
    const Point2 a = g_.vertices[u];
    const Point2 b = g_.vertices[v];
    if (u == v) return;
    if (a == b) {
      g_.edges.push_back({std::min(u, v), std::max(u, v), 0.0});
    } else if (b.x >= a.x && b.y >= a.y) {
      g_.edges.push_back({u, v, l1_distance(a, b)});
    } else if (a.x >= b.x && a.y >= b.y) {
      g_.edges.push_back({v, u, l1_distance(a, b)});
    }
  }

  const CellFreeSpace& region_;
  SteinerGraph& g_;
  double tol_;
};

}  // namespace

SteinerGraph build_gprime(const BoundaryPointSet& ps) {
  SteinerGraph g;
  g.vertices = ps.points();
  g.input_count = g.vertices.size();
  g.depth.assign(g.input_count, -1);
  std::vector<std::size_t> idx(g.input_count);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Point2 pa = g.vertices[a], pb = g.vertices[b];
    return pa.x != pb.x ? pa.x < pb.x : pa.y < pb.y;
  });
  GPrimeBuilder(ps.region(), g).run(std::move(idx), 0);
  return g;
}

std::size_t gstar_cell_vertex_count(const CellVertexCount& c) { return c.side + c.boundary + c.steiner; }

namespace {

enum SideBit : unsigned { kLeft = 1, kRight = 2, kBottom = 4, kTop = 8 };

struct Stop {
  double coord = 0.0;
  bool on_boundary = false;
};

struct CellWork {
  std::vector<Point2> pts;           // distinct free-space boundary points
  std::vector<unsigned> sides;       // SideBit mask per point
  SteinerGraph gp;
  std::vector<Stop> left, right, bottom, top;  // contributions to the sides
  std::size_t interior_base = 0;
  std::vector<VertexId> ids;         // global id per gp vertex
};

std::pair<std::size_t, std::size_t> range_in(const std::vector<double>& v, double lo, double hi, double tol) {
  auto a = std::lower_bound(v.begin(), v.end(), lo - tol);
  auto b = std::upper_bound(v.begin(), v.end(), hi + tol);
  return {static_cast<std::size_t>(a - v.begin()), static_cast<std::size_t>(b - v.begin())};
}

double snap_to(const std::vector<double>& v, std::size_t first, std::size_t last, double x, double tol) {
  auto it = std::lower_bound(v.begin() + static_cast<std::ptrdiff_t>(first), v.begin() + static_cast<std::ptrdiff_t>(last), x - tol);
  if (it != v.begin() + static_cast<std::ptrdiff_t>(last) && *it <= x + tol) return *it;
  return x;
}

void collect_cell(const DeformedDiagram& diag, const std::vector<double>& xs, const std::vector<double>& ys,
                  std::size_t i, std::size_t j, double tol, CellWork& w) {
  const CellFreeSpace& cell = diag.cell(i, j);
  const CellRect& r = cell.rect();
  auto [xa, xb] = range_in(xs, r.x0, r.x1, tol);
  auto [ya, yb] = range_in(ys, r.y0, r.y1, tol);
  if (!cell.empty() && !cell.full()) {
    for (std::size_t k = xa; k < xb; ++k) {
      for (Point2 p : line_ellipse_intersections(cell, AxisLine::vertical(xs[k]))) {
        p.y = snap_to(ys, ya, yb, p.y, tol);
        w.pts.push_back(p);
      }
    }
    for (std::size_t k = ya; k < yb; ++k) {
      for (Point2 p : line_ellipse_intersections(cell, AxisLine::horizontal(ys[k]))) {
        p.x = snap_to(xs, xa, xb, p.x, tol);
        w.pts.push_back(p);
      }
    }
  }
  std::sort(w.pts.begin(), w.pts.end(), [](Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  w.pts.erase(std::unique(w.pts.begin(), w.pts.end(),
                          [&](Point2 a, Point2 b) { return std::abs(a.x - b.x) <= tol && std::abs(a.y - b.y) <= tol; }),
              w.pts.end());
  for (Point2& p : w.pts) {
    unsigned mask = 0;
    if (std::abs(p.x - r.x0) <= tol) mask |= kLeft, p.x = r.x0;
    if (std::abs(p.x - r.x1) <= tol) mask |= kRight, p.x = r.x1;
    if (std::abs(p.y - r.y0) <= tol) mask |= kBottom, p.y = r.y0;
    if (std::abs(p.y - r.y1) <= tol) mask |= kTop, p.y = r.y1;
    w.sides.push_back(mask);
    // Projections onto all four sides; points already on a side land there.
    w.left.push_back({p.y, (mask & kLeft) != 0});
    w.right.push_back({p.y, (mask & kRight) != 0});
    w.bottom.push_back({p.x, (mask & kBottom) != 0});
    w.top.push_back({p.x, (mask & kTop) != 0});
  }
  w.gp = build_gprime(BoundaryPointSet::trusted(cell, w.pts));
}

// Sorted, deduplicated stops of one cell side, including both endpoints.
std::vector<Stop> merge_side(std::vector<Stop> stops, double lo, double hi, double tol) {
  stops.push_back({lo, false});
  stops.push_back({hi, false});
  for (Stop& s : stops) {
    if (std::abs(s.coord - lo) <= tol) s.coord = lo;
    if (std::abs(s.coord - hi) <= tol) s.coord = hi;
  }
  std::sort(stops.begin(), stops.end(), [](const Stop& a, const Stop& b) { return a.coord < b.coord; });
  std::vector<Stop> out;
  for (const Stop& s : stops) {
    if (!out.empty() && s.coord - out.back().coord <= tol) {
      out.back().on_boundary = out.back().on_boundary || s.on_boundary;
      if (s.coord == lo || s.coord == hi) out.back().coord = s.coord;
      continue;
    }
    out.push_back(s);
  }
  return out;
}

struct Side {
  std::vector<Stop> stops;
  VertexId first_corner = 0;
  VertexId last_corner = 0;
  std::size_t base = 0;  // id of stops[1]

  VertexId id_at(std::size_t k) const {
    if (k == 0) return first_corner;
    if (k + 1 == stops.size()) return last_corner;
    return static_cast<VertexId>(base + k - 1);
  }
  VertexId lookup(double coord, double tol) const {
    auto it = std::lower_bound(stops.begin(), stops.end(), coord - tol,
                               [](const Stop& s, double v) { return s.coord < v; });
    if (it == stops.end() || it->coord > coord + tol) throw std::logic_error("missing side vertex");
    return id_at(static_cast<std::size_t>(it - stops.begin()));
  }
};

}  // namespace

GStarGraph build_graph_gstar(const DeformedDiagram& diag, double delta, Execution exec) {
  return build_graph_gstar(diag, place_grid(diag, delta, exec), exec);
}

GStarGraph build_graph_gstar(const DeformedDiagram& diag, const GridLines& lines, Execution exec) {
  const std::vector<double> xs = lines.xs();
  const std::vector<double> ys = lines.ys();
  const std::size_t n1 = diag.columns();
  const std::size_t n2 = diag.rows();
  const auto cb = diag.column_bounds();
  const auto rb = diag.row_bounds();
  const double tol = diag.coord_tolerance();

  std::vector<CellWork> work(n1 * n2);
  detail::for_each_index(work.size(), exec,
                         [&](std::size_t k) { collect_cell(diag, xs, ys, k / n2, k % n2, tol, work[k]); });

  // Sides: vertical side (c, j) lies on x = cb[c] spanning row j; horizontal
  // side (i, r) lies on y = rb[r] spanning column i.
  auto corner = [&](std::size_t c, std::size_t r) { return static_cast<VertexId>(c * (n2 + 1) + r); };
  std::vector<Side> vsides((n1 + 1) * n2), hsides(n1 * (n2 + 1));
  detail::for_each_index(vsides.size(), exec, [&](std::size_t k) {
    const std::size_t c = k / n2, j = k % n2;
    std::vector<Stop> stops;
    auto [a, b] = range_in(ys, rb[j], rb[j + 1], tol);
    for (std::size_t t = a; t < b; ++t) stops.push_back({ys[t], false});
    if (c < n1) stops.insert(stops.end(), work[c * n2 + j].left.begin(), work[c * n2 + j].left.end());
    if (c > 0) stops.insert(stops.end(), work[(c - 1) * n2 + j].right.begin(), work[(c - 1) * n2 + j].right.end());
    vsides[k].stops = merge_side(std::move(stops), rb[j], rb[j + 1], tol);
    vsides[k].first_corner = corner(c, j);
    vsides[k].last_corner = corner(c, j + 1);
  });
  detail::for_each_index(hsides.size(), exec, [&](std::size_t k) {
    const std::size_t i = k / (n2 + 1), r = k % (n2 + 1);
    std::vector<Stop> stops;
    auto [a, b] = range_in(xs, cb[i], cb[i + 1], tol);
    for (std::size_t t = a; t < b; ++t) stops.push_back({xs[t], false});
    if (r < n2) stops.insert(stops.end(), work[i * n2 + r].bottom.begin(), work[i * n2 + r].bottom.end());
    if (r > 0) stops.insert(stops.end(), work[i * n2 + r - 1].top.begin(), work[i * n2 + r - 1].top.end());
    hsides[k].stops = merge_side(std::move(stops), cb[i], cb[i + 1], tol);
    hsides[k].first_corner = corner(i, r);
    hsides[k].last_corner = corner(i + 1, r);
  });

  std::size_t next = (n1 + 1) * (n2 + 1);
  for (Side& s : vsides) {
    s.base = next;
    next += s.stops.size() - 2;
  }
  for (Side& s : hsides) {
    s.base = next;
    next += s.stops.size() - 2;
  }
  for (CellWork& w : work) {
    w.interior_base = next;
    std::size_t interior = 0;
    for (unsigned m : w.sides) interior += m == 0 ? 1 : 0;
    next += interior + (w.gp.vertices.size() - w.gp.input_count);
  }
  if (next > std::numeric_limits<VertexId>::max()) throw std::invalid_argument("steiner graph too large");

  GStarGraph out;
  MonotoneGraph& g = out.graph;
  g.vertices.resize(next);
  for (std::size_t c = 0; c <= n1; ++c) {
    for (std::size_t r = 0; r <= n2; ++r) g.vertices[corner(c, r)] = {{cb[c], rb[r]}, VertexKind::corner};
  }
  auto place_side = [&](const Side& s, bool vertical, double fixed) {
    for (std::size_t k = 1; k + 1 < s.stops.size(); ++k) {
      Point2 p = vertical ? Point2{fixed, s.stops[k].coord} : Point2{s.stops[k].coord, fixed};
      g.vertices[s.id_at(k)] = {p, s.stops[k].on_boundary ? VertexKind::ellipse_boundary : VertexKind::grid_crossing};
    }
  };
  for (std::size_t k = 0; k < vsides.size(); ++k) place_side(vsides[k], true, cb[k / n2]);
  for (std::size_t k = 0; k < hsides.size(); ++k) place_side(hsides[k], false, rb[k % (n2 + 1)]);

  auto vside = [&](std::size_t c, std::size_t j) -> const Side& { return vsides[c * n2 + j]; };
  auto hside = [&](std::size_t i, std::size_t r) -> const Side& { return hsides[i * (n2 + 1) + r]; };

  std::vector<std::vector<GraphEdge>> cell_edges(work.size());
  out.cells.resize(work.size());
  detail::for_each_index(work.size(), exec, [&](std::size_t k) {
    const std::size_t i = k / n2, j = k % n2;
    CellWork& w = work[k];
    const Side& L = vside(i, j);
    const Side& R = vside(i + 1, j);
    const Side& B = hside(i, j);
    const Side& T = hside(i, j + 1);

    // Global ids of the G' vertices.
    w.ids.resize(w.gp.vertices.size());
    std::size_t slot = w.interior_base;
    for (std::size_t p = 0; p < w.gp.input_count; ++p) {
      const Point2 v = w.pts[p];
      const unsigned m = w.sides[p];
      if (m & kLeft) w.ids[p] = L.lookup(v.y, tol);
      else if (m & kRight) w.ids[p] = R.lookup(v.y, tol);
      else if (m & kBottom) w.ids[p] = B.lookup(v.x, tol);
      else if (m & kTop) w.ids[p] = T.lookup(v.x, tol);
      else {
        w.ids[p] = static_cast<VertexId>(slot++);
        g.vertices[w.ids[p]] = {v, VertexKind::ellipse_boundary};
      }
    }
    for (std::size_t p = w.gp.input_count; p < w.gp.vertices.size(); ++p) {
      w.ids[p] = static_cast<VertexId>(slot++);
      g.vertices[w.ids[p]] = {w.gp.vertices[p], VertexKind::steiner};
    }

    std::vector<GraphEdge>& es = cell_edges[k];
    for (const SteinerEdge& e : w.gp.edges) {
      VertexId a = w.ids[e.src], b = w.ids[e.dst];
      if (a == b) continue;
      es.push_back(make_free_edge(a, g.vertices[a].pos, b, g.vertices[b].pos));
    }
    auto add = [&](VertexId a, VertexId b) {
      if (a == b) return;
      const Point2 p = g.vertices[a].pos, q = g.vertices[b].pos;
      if (is_monotone_step(p, q)) es.push_back(make_weighted_edge(diag, a, p, b, q));
    };
    for (std::size_t p = 0; p < w.gp.input_count; ++p) {
      const Point2 v = w.pts[p];
      const VertexId id = w.ids[p];
      add(L.lookup(v.y, tol), id);
      add(B.lookup(v.x, tol), id);
      add(id, R.lookup(v.y, tol));
      add(id, T.lookup(v.x, tol));
    }
    CellVertexCount& cnt = out.cells[k];
    cnt.i = i;
    cnt.j = j;
    cnt.side = L.stops.size() + R.stops.size() + B.stops.size() + T.stops.size() - 4;
    cnt.boundary = slot - w.interior_base - (w.gp.vertices.size() - w.gp.input_count);
    cnt.steiner = w.gp.vertices.size() - w.gp.input_count;
  });

  auto side_edges = [&](const Side& s, std::vector<GraphEdge>& es) {
    for (std::size_t k = 0; k + 1 < s.stops.size(); ++k) {
      VertexId a = s.id_at(k), b = s.id_at(k + 1);
      es.push_back(make_weighted_edge(diag, a, g.vertices[a].pos, b, g.vertices[b].pos));
    }
  };
  std::vector<std::vector<GraphEdge>> vedges(vsides.size()), hedges(hsides.size());
  detail::for_each_index(vsides.size(), exec, [&](std::size_t k) { side_edges(vsides[k], vedges[k]); });
  detail::for_each_index(hsides.size(), exec, [&](std::size_t k) { side_edges(hsides[k], hedges[k]); });
  for (auto* group : {&vedges, &hedges, &cell_edges}) {
    for (auto& v : *group) g.edges.insert(g.edges.end(), v.begin(), v.end());
  }
  g.source = corner(0, 0);
  g.target = corner(n1, n2);
  return out;
}

}  // namespace robust_frechet
