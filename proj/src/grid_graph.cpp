#include "robust_frechet/grid_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "parallel.hpp"

namespace robust_frechet {

namespace {

constexpr std::size_t kMaxLinesPerDirection = 4'000'000;

std::vector<double> equidistant(double extent, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = extent * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  out.back() = extent;
  return out;
}

// Sorts by position (cell boundaries win ties over equidistant lines, which
// win over intersection lines) and drops lines within tol of a kept one.
std::vector<GridLine> dedup_lines(std::vector<GridLine> lines, double tol) {
  std::sort(lines.begin(), lines.end(), [](const GridLine& a, const GridLine& b) {
    if (a.position != b.position) return a.position < b.position;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });
  std::vector<GridLine> out;
  for (const GridLine& l : lines) {
    if (!out.empty() && l.position - out.back().position <= tol) {
      if (static_cast<int>(l.kind) < static_cast<int>(out.back().kind)) out.back() = l;
      continue;
    }
    out.push_back(l);
  }
  return out;
}

// Positions where the lines of one direction cross free-space boundaries;
// each such crossing spawns an orthogonal line.
std::vector<double> spawned_positions(const DeformedDiagram& diag, const std::vector<GridLine>& base, bool vertical,
                                      Execution exec) {
  std::vector<std::vector<double>> per_line(base.size());
  detail::for_each_index(base.size(), exec, [&](std::size_t k) {
    const double pos = base[k].position;
    IndexRange range = vertical ? diag.column_range(pos) : diag.row_range(pos);
    const std::size_t across = vertical ? diag.rows() : diag.columns();
    for (std::size_t a = range.first; !range.empty() && a <= range.last; ++a) {
      for (std::size_t b = 0; b < across; ++b) {
        const CellFreeSpace& cell = vertical ? diag.cell(a, b) : diag.cell(b, a);
        if (cell.empty() || cell.full()) continue;
        AxisLine line = vertical ? AxisLine::vertical(pos) : AxisLine::horizontal(pos);
        for (Point2 p : line_ellipse_intersections(cell, line)) per_line[k].push_back(vertical ? p.y : p.x);
      }
    }
  });
  std::vector<double> out;
  for (auto& v : per_line) out.insert(out.end(), v.begin(), v.end());
  return out;
}

GridLines assemble_lines(const DeformedDiagram& diag, std::size_t count_x, std::size_t count_y, Execution exec) {
  if (count_x > kMaxLinesPerDirection || count_y > kMaxLinesPerDirection) {
    throw std::invalid_argument("grid too fine: too many equidistant lines");
  }
  const double tol = diag.coord_tolerance();
  std::vector<GridLine> base_v, base_h;
  for (double x : diag.column_bounds()) base_v.push_back({x, LineKind::cell_boundary});
  for (double y : diag.row_bounds()) base_h.push_back({y, LineKind::cell_boundary});
  for (double x : equidistant(diag.width(), count_x)) base_v.push_back({x, LineKind::equidistant});
  for (double y : equidistant(diag.height(), count_y)) base_h.push_back({y, LineKind::equidistant});
  base_v = dedup_lines(std::move(base_v), tol);
  base_h = dedup_lines(std::move(base_h), tol);

  GridLines out;
  out.equidistant_vertical = count_x;
  out.equidistant_horizontal = count_y;
  out.vertical = base_v;
  out.horizontal = base_h;
  for (double y : spawned_positions(diag, base_v, true, exec)) {
    out.horizontal.push_back({std::clamp(y, 0.0, diag.height()), LineKind::intersection});
  }
  for (double x : spawned_positions(diag, base_h, false, exec)) {
    out.vertical.push_back({std::clamp(x, 0.0, diag.width()), LineKind::intersection});
  }
  out.vertical = dedup_lines(std::move(out.vertical), tol);
  out.horizontal = dedup_lines(std::move(out.horizontal), tol);
  return out;
}

std::vector<double> positions(const std::vector<GridLine>& lines) {
  std::vector<double> out;
  out.reserve(lines.size());
  for (const GridLine& l : lines) out.push_back(l.position);
  return out;
}

// Index of the entry of sorted `v` within tol of x, or npos.
std::size_t snap(const std::vector<double>& v, double x, double tol) {
  auto it = std::lower_bound(v.begin(), v.end(), x - tol);
  if (it != v.end() && *it <= x + tol) {
    auto best = it;
    for (auto jt = it; jt != v.end() && *jt <= x + tol; ++jt) {
      if (std::abs(*jt - x) < std::abs(*best - x)) best = jt;
    }
    return static_cast<std::size_t>(best - v.begin());
  }
  return std::numeric_limits<std::size_t>::max();
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// A crossing of one line with a free-space boundary. `dense` indexes the
// orthogonal line it lands on, or is kNone for a vertex of its own.
struct Hit {
  double coord = 0.0;
  std::size_t dense = kNone;
  std::size_t extra = kNone;
  std::size_t cell = 0;
};

struct LineHits {
  std::vector<Hit> hits;
  std::vector<double> extras;  // sorted coordinates of own vertices
};

LineHits collect_hits(const DeformedDiagram& diag, double pos, bool vertical, const std::vector<double>& ortho,
                      double tol) {
  LineHits out;
  IndexRange range = vertical ? diag.column_range(pos) : diag.row_range(pos);
  const std::size_t across = vertical ? diag.rows() : diag.columns();
  for (std::size_t a = range.first; !range.empty() && a <= range.last; ++a) {
    for (std::size_t b = 0; b < across; ++b) {
      std::size_t i = vertical ? a : b;
      std::size_t j = vertical ? b : a;
      const CellFreeSpace& cell = diag.cell(i, j);
      if (cell.empty() || cell.full()) continue;
      AxisLine line = vertical ? AxisLine::vertical(pos) : AxisLine::horizontal(pos);
      for (Point2 p : line_ellipse_intersections(cell, line)) {
        Hit h;
        h.coord = vertical ? p.y : p.x;
        h.cell = i * diag.rows() + j;
        h.dense = snap(ortho, h.coord, tol);
        out.hits.push_back(h);
      }
    }
  }
  std::sort(out.hits.begin(), out.hits.end(), [](const Hit& a, const Hit& b) { return a.coord < b.coord; });
  for (Hit& h : out.hits) {
    if (h.dense != kNone) continue;
    if (out.extras.empty() || h.coord - out.extras.back() > tol) out.extras.push_back(h.coord);
    h.extra = out.extras.size() - 1;
  }
  return out;
}

double angle_about(Point2 c, Point2 p) { return std::atan2(p.y - c.y, p.x - c.x); }

}  // namespace

std::vector<double> GridLines::xs() const { return positions(vertical); }
std::vector<double> GridLines::ys() const { return positions(horizontal); }

GridLines place_grid(const DeformedDiagram& diag, double delta, Execution exec) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
  const double n = static_cast<double>(diag.columns() + diag.rows());
  double want = std::ceil(n / delta);
  if (want > static_cast<double>(kMaxLinesPerDirection)) throw std::invalid_argument("delta too small");
  std::size_t count = std::max<std::size_t>(2, static_cast<std::size_t>(want));
  return assemble_lines(diag, count, count, exec);
}

GridLines place_grid_with_spacing(const DeformedDiagram& diag, double spacing, Execution exec) {
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw std::invalid_argument("spacing must be positive");
  double cx = std::ceil(diag.width() / spacing) + 1.0;
  double cy = std::ceil(diag.height() / spacing) + 1.0;
  if (cx > static_cast<double>(kMaxLinesPerDirection) || cy > static_cast<double>(kMaxLinesPerDirection)) {
    throw std::invalid_argument("spacing too small");
  }
  return assemble_lines(diag, std::max<std::size_t>(2, static_cast<std::size_t>(cx)),
                        std::max<std::size_t>(2, static_cast<std::size_t>(cy)), exec);
}

const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::grid_crossing:
      return "grid-crossing";
    case VertexKind::ellipse_boundary:
      return "ellipse-boundary";
    case VertexKind::steiner:
      return "steiner";
    case VertexKind::corner:
      return "corner";
  }
  return "?";
}

bool is_monotone_step(Point2 p, Point2 q) { return q.x >= p.x && q.y >= p.y && !(q.x == p.x && q.y == p.y); }

GraphEdge make_weighted_edge(const DeformedDiagram& diag, VertexId src, Point2 p, VertexId dst, Point2 q) {
  GraphEdge e;
  e.src = src;
  e.dst = dst;
  e.l1 = l1_distance(p, q);
  Interval r = e.l1 > 0.0 ? diag.segment_free_interval(p, q) : Interval{0.0, 1.0};
  e.free_lo = r.lo;
  e.free_hi = r.hi;
  e.forbidden = std::clamp(e.l1 * (1.0 - r.length()), 0.0, e.l1);
  return e;
}

GraphEdge make_free_edge(VertexId src, Point2 p, VertexId dst, Point2 q) {
  return GraphEdge{src, dst, l1_distance(p, q), 0.0, 0.0, 1.0};
}

std::vector<VertexId> topological_order(const MonotoneGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::uint32_t> indeg(n, 0);
  std::vector<std::size_t> offs(n + 1, 0);
  for (const GraphEdge& e : g.edges) {
    ++indeg[e.dst];
    ++offs[e.src + 1];
  }
  std::partial_sum(offs.begin(), offs.end(), offs.begin());
  std::vector<VertexId> adj(g.edges.size());
  std::vector<std::size_t> fill(offs.begin(), offs.end() - 1);
  for (const GraphEdge& e : g.edges) adj[fill[e.src]++] = e.dst;

  std::vector<VertexId> order;
  order.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) order.push_back(static_cast<VertexId>(v));
  }
  for (std::size_t head = 0; head < order.size(); ++head) {
    VertexId u = order[head];
    for (std::size_t k = offs[u]; k < offs[u + 1]; ++k) {
      if (--indeg[adj[k]] == 0) order.push_back(adj[k]);
    }
  }
  if (order.size() != n) throw std::logic_error("graph has a cycle");
  return order;
}

GraphSize graph_size_report(const MonotoneGraph& g) { return {g.vertices.size(), g.edges.size()}; }

std::string graph_to_json(const MonotoneGraph& g) {
  nlohmann::json vs = nlohmann::json::array();
  for (std::size_t k = 0; k < g.vertices.size(); ++k) {
    const GraphVertex& v = g.vertices[k];
    vs.push_back({{"id", k}, {"x", v.pos.x}, {"y", v.pos.y}, {"kind", to_string(v.kind)}});
  }
  nlohmann::json es = nlohmann::json::array();
  for (const GraphEdge& e : g.edges) {
    es.push_back({{"src", e.src}, {"dst", e.dst}, {"l1", e.l1}, {"forbidden", e.forbidden}});
  }
  return nlohmann::json{{"vertices", vs}, {"edges", es}, {"source", g.source}, {"target", g.target}}.dump();
}

MonotoneGraph build_graph_g(const DeformedDiagram& diag, const GridLines& lines, Execution exec) {
  const std::vector<double> xs = lines.xs();
  const std::vector<double> ys = lines.ys();
  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid needs at least two lines per direction");
  if (static_cast<double>(nx) * static_cast<double>(ny) > 2.0e9) throw std::invalid_argument("grid graph too large");
  const double tol = diag.coord_tolerance();

  // Boundary crossings per line.
  std::vector<LineHits> vhits(nx), hhits(ny);
  detail::for_each_index(nx, exec, [&](std::size_t i) { vhits[i] = collect_hits(diag, xs[i], true, ys, tol); });
  detail::for_each_index(ny, exec, [&](std::size_t j) { hhits[j] = collect_hits(diag, ys[j], false, xs, tol); });

  // Vertex ids: dense crossings first, then per-line extras in line order.
  std::vector<std::size_t> vbase(nx + 1), hbase(ny + 1);
  vbase[0] = nx * ny;
  for (std::size_t i = 0; i < nx; ++i) vbase[i + 1] = vbase[i] + vhits[i].extras.size();
  hbase[0] = vbase[nx];
  for (std::size_t j = 0; j < ny; ++j) hbase[j + 1] = hbase[j] + hhits[j].extras.size();
  const std::size_t total = hbase[ny];
  if (total > std::numeric_limits<VertexId>::max()) throw std::invalid_argument("grid graph too large");

  MonotoneGraph g;
  g.vertices.resize(total);
  detail::for_each_index(nx, exec, [&](std::size_t i) {
    for (std::size_t j = 0; j < ny; ++j) g.vertices[i * ny + j] = {{xs[i], ys[j]}, VertexKind::grid_crossing};
    for (std::size_t k = 0; k < vhits[i].extras.size(); ++k) {
      g.vertices[vbase[i] + k] = {{xs[i], vhits[i].extras[k]}, VertexKind::ellipse_boundary};
    }
  });
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t k = 0; k < hhits[j].extras.size(); ++k) {
      g.vertices[hbase[j] + k] = {{hhits[j].extras[k], ys[j]}, VertexKind::ellipse_boundary};
    }
  }
  auto vid = [&](bool vertical, std::size_t line, const Hit& h) -> VertexId {
    if (vertical) return static_cast<VertexId>(h.dense != kNone ? line * ny + h.dense : vbase[line] + h.extra);
    return static_cast<VertexId>(h.dense != kNone ? h.dense * ny + line : hbase[line] + h.extra);
  };

  // Boundary vertices per cell, for the chord edges.
  std::vector<std::vector<VertexId>> cell_vertices(diag.columns() * diag.rows());
  for (std::size_t i = 0; i < nx; ++i) {
    for (const Hit& h : vhits[i].hits) cell_vertices[h.cell].push_back(vid(true, i, h));
  }
  for (std::size_t j = 0; j < ny; ++j) {
    for (const Hit& h : hhits[j].hits) cell_vertices[h.cell].push_back(vid(false, j, h));
  }
  for (auto& list : cell_vertices) {
    for (VertexId v : list) g.vertices[v].kind = VertexKind::ellipse_boundary;
  }
  g.source = 0;
  g.target = static_cast<VertexId>(nx * ny - 1);
  g.vertices[g.source].kind = VertexKind::corner;
  g.vertices[g.target].kind = VertexKind::corner;

  // Edges between consecutive vertices along each line.
  auto line_edges = [&](bool vertical, std::size_t line) {
    const LineHits& lh = vertical ? vhits[line] : hhits[line];
    const std::vector<double>& ortho = vertical ? ys : xs;
    std::vector<std::pair<double, VertexId>> stops;
    stops.reserve(ortho.size() + lh.extras.size());
    for (std::size_t k = 0; k < ortho.size(); ++k) {
      stops.push_back({ortho[k], static_cast<VertexId>(vertical ? line * ny + k : k * ny + line)});
    }
    const std::size_t base = vertical ? vbase[line] : hbase[line];
    for (std::size_t k = 0; k < lh.extras.size(); ++k) stops.push_back({lh.extras[k], static_cast<VertexId>(base + k)});
    std::stable_sort(stops.begin(), stops.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<GraphEdge> out;
    out.reserve(stops.size());
    for (std::size_t k = 0; k + 1 < stops.size(); ++k) {
      Point2 p = g.vertices[stops[k].second].pos;
      Point2 q = g.vertices[stops[k + 1].second].pos;
      if (!is_monotone_step(p, q)) continue;
      out.push_back(make_weighted_edge(diag, stops[k].second, p, stops[k + 1].second, q));
    }
    return out;
  };
  std::vector<std::vector<GraphEdge>> vedges(nx), hedges(ny);
  detail::for_each_index(nx, exec, [&](std::size_t i) { vedges[i] = line_edges(true, i); });
  detail::for_each_index(ny, exec, [&](std::size_t j) { hedges[j] = line_edges(false, j); });

  // Chords between consecutive boundary vertices of each cell's free region.
  std::vector<std::vector<GraphEdge>> chords(cell_vertices.size());
  detail::for_each_index(cell_vertices.size(), exec, [&](std::size_t c) {
    std::vector<VertexId> ids = cell_vertices[c];
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() < 2) return;
    Point2 centre{0.0, 0.0};
    for (VertexId v : ids) centre = centre + g.vertices[v].pos;
    centre = (1.0 / static_cast<double>(ids.size())) * centre;
    bool collinear = true;
    Point2 d0 = g.vertices[ids[1]].pos - g.vertices[ids[0]].pos;
    for (VertexId v : ids) {
      Point2 d = g.vertices[v].pos - g.vertices[ids[0]].pos;
      if (std::abs(d0.x * d.y - d0.y * d.x) > 1e-12 * (std::abs(d0.x) + std::abs(d0.y)) * (std::abs(d.x) + std::abs(d.y))) {
        collinear = false;
        break;
      }
    }
    if (collinear) {
      std::sort(ids.begin(), ids.end(), [&](VertexId a, VertexId b) {
        Point2 pa = g.vertices[a].pos, pb = g.vertices[b].pos;
        return pa.x != pb.x ? pa.x < pb.x : (pa.y != pb.y ? pa.y < pb.y : a < b);
      });
    } else {
      std::sort(ids.begin(), ids.end(), [&](VertexId a, VertexId b) {
        double ta = angle_about(centre, g.vertices[a].pos), tb = angle_about(centre, g.vertices[b].pos);
        return ta != tb ? ta < tb : a < b;
      });
    }
    const std::size_t m = ids.size();
    const std::size_t pairs = (collinear || m == 2) ? m - 1 : m;
    for (std::size_t k = 0; k < pairs; ++k) {
      VertexId a = ids[k], b = ids[(k + 1) % m];
      Point2 pa = g.vertices[a].pos, pb = g.vertices[b].pos;
      if (is_monotone_step(pa, pb)) chords[c].push_back(make_free_edge(a, pa, b, pb));
      else if (is_monotone_step(pb, pa)) chords[c].push_back(make_free_edge(b, pb, a, pa));
    }
  });

  for (auto* group : {&vedges, &hedges, &chords}) {
    for (auto& v : *group) g.edges.insert(g.edges.end(), v.begin(), v.end());
  }
  return g;
}

}  // namespace robust_frechet
