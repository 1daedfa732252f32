#include "robust_frechet/pathsearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "robust_frechet/steiner.hpp"

namespace robust_frechet {

const char* to_string(Algorithm a) { return a == Algorithm::grid ? "grid" : "steiner"; }

namespace {

// Whether b continues the axis-parallel segment ab straight on to c.
bool same_axis_run(Point2 a, Point2 b, Point2 c) {
  return (a.x == b.x && b.x == c.x) || (a.y == b.y && b.y == c.y);
}

}  // namespace

PathSolution shortest_forbidden_path(const MonotoneGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::size_t> offs(n + 1, 0);
  for (const GraphEdge& e : g.edges) ++offs[e.src + 1];
  std::partial_sum(offs.begin(), offs.end(), offs.begin());
  std::vector<std::size_t> out_edges(g.edges.size());
  {
    std::vector<std::size_t> fill(offs.begin(), offs.end() - 1);
    for (std::size_t k = 0; k < g.edges.size(); ++k) out_edges[fill[g.edges[k].src]++] = k;
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNoEdge = std::numeric_limits<std::size_t>::max();
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> pred(n, kNoEdge);
  dist[g.source] = 0.0;
  for (VertexId u : topological_order(g)) {
    if (dist[u] == kInf) continue;
    for (std::size_t k = offs[u]; k < offs[u + 1]; ++k) {
      const GraphEdge& e = g.edges[out_edges[k]];
      const double nd = dist[u] + e.forbidden;
      if (nd < dist[e.dst] || (nd == dist[e.dst] && pred[e.dst] != kNoEdge && u < g.edges[pred[e.dst]].src)) {
        dist[e.dst] = nd;
        pred[e.dst] = out_edges[k];
      }
    }
  }
  if (dist[g.target] == kInf) throw std::logic_error("target not reachable from source");

  std::vector<std::size_t> path;
  for (VertexId v = g.target; v != g.source; v = g.edges[pred[v]].src) path.push_back(pred[v]);
  std::reverse(path.begin(), path.end());

  PathSolution sol;
  sol.polyline.push_back(g.vertices[g.source].pos);
  for (std::size_t k : path) {
    const GraphEdge& e = g.edges[k];
    const Point2 p = g.vertices[e.src].pos;
    const Point2 q = g.vertices[e.dst].pos;
    if (sol.polyline.size() >= 2 && same_axis_run(sol.polyline[sol.polyline.size() - 2], p, q)) {
      sol.polyline.back() = q;
    } else {
      sol.polyline.push_back(q);
    }
    sol.quality_B += e.forbidden;
    sol.quality_W += e.l1 - e.forbidden;
    auto at = [&](double t) { return t <= 0.0 ? p : (t >= 1.0 ? q : p + t * (q - p)); };
    auto piece = [&](double a, double b, bool free) {
      if (!(b > a)) return;
      const Point2 from = at(a), to = at(b);
      if (!sol.pieces.empty()) {
        PathPiece& last = sol.pieces.back();
        if (last.free == free && last.to == from && same_axis_run(last.from, from, to)) {
          last.to = to;
          return;
        }
      }
      sol.pieces.push_back({from, to, free});
    };
    if (e.forbidden == 0.0) {
      piece(0.0, 1.0, true);
    } else if (e.free_lo > e.free_hi) {
      piece(0.0, 1.0, false);
    } else {
      const double lo = std::clamp(e.free_lo, 0.0, 1.0);
      const double hi = std::clamp(e.free_hi, 0.0, 1.0);
      piece(0.0, lo, false);
      piece(lo, hi, true);
      piece(hi, 1.0, false);
    }
  }
  return sol;
}

MonotoneGraph build_solver_graph(const DeformedDiagram& diag, double delta, SolveOptions opts) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  GridLines lines = place_grid(diag, delta / 16.0, opts.execution);
  if (opts.algorithm == Algorithm::grid) return build_graph_g(diag, lines, opts.execution);
  return build_graph_gstar(diag, lines, opts.execution).graph;
}

PathSolution solve_on_diagram(const DeformedDiagram& diag, double delta, SolveOptions opts) {
  return shortest_forbidden_path(build_solver_graph(diag, delta, opts));
}

PathSolution solve_minex(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps, double delta,
                         SolveOptions opts) {
  return solve_on_diagram(build_diagram(t1, t2, eps, Metric::L2, opts.execution), delta, opts);
}

PathSolution solve_maxin(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps, double delta,
                         SolveOptions opts) {
  return solve_minex(t1, t2, eps, delta, opts);
}

double additive_guarantee(const PolygonalCurve& t1, const PolygonalCurve& t2, double delta) {
  return delta * std::max(t1.length(), t2.length());
}

std::vector<ForbiddenRun> extract_forbidden_runs(const PathSolution& sol, double merge_tol) {
  std::vector<ForbiddenRun> runs;
  double gap = std::numeric_limits<double>::infinity();  // free length since the last forbidden piece
  for (const PathPiece& p : sol.pieces) {
    if (p.free) {
      gap += p.l1();
      continue;
    }
    if (!runs.empty() && gap < merge_tol) runs.back().b = p.to;
    else runs.push_back({p.from, p.to});
    gap = 0.0;
  }
  return runs;
}

namespace {

PolygonalCurve replace_subcurves(const PolygonalCurve& c, const std::vector<Interval>& cuts) {
  const auto cum = c.cumulative_lengths();
  const auto verts = c.vertices();
  std::vector<Point2> pts;
  std::size_t k = 0;
  for (const Interval& cut : cuts) {
    while (k < verts.size() && cum[k] < cut.lo) pts.push_back(verts[k++]);
    pts.push_back(c.at_arclength(cut.lo));
    pts.push_back(c.at_arclength(cut.hi));
    while (k < verts.size() && cum[k] <= cut.hi) ++k;
  }
  while (k < verts.size()) pts.push_back(verts[k++]);
  return PolygonalCurve(std::move(pts));
}

void check_endpoint(const char* which, Point2 p, Point2 q, double eps, double scale) {
  const double d = euclidean_distance(p, q);
  if (d > eps + 1e-12 * scale) {
    std::ostringstream msg;
    msg << which << " points of the curves are " << d << " apart, more than epsilon = " << eps;
    throw ShortcutError(msg.str());
  }
}

}  // namespace

ShortcutCurves build_shortcut_curves(const PolygonalCurve& t1, const PolygonalCurve& t2, const PathSolution& sol,
                                     Leash eps) {
  const double total = t1.length() + t2.length();
  check_endpoint("start", t1.front(), t2.front(), eps.epsilon(), total);
  check_endpoint("end", t1.back(), t2.back(), eps.epsilon(), total);

  std::vector<Interval> cuts_a, cuts_b;
  double replaced = 0.0;
  for (const ForbiddenRun& r : extract_forbidden_runs(sol, 1e-12 * total)) {
    if (r.b.x > r.a.x) cuts_a.push_back({r.a.x, r.b.x});
    if (r.b.y > r.a.y) cuts_b.push_back({r.a.y, r.b.y});
    replaced += (r.b.x - r.a.x) + (r.b.y - r.a.y);
  }
  return ShortcutCurves{replace_subcurves(t1, cuts_a), replace_subcurves(t2, cuts_b), cuts_a, cuts_b, replaced};
}

bool frechet_decision(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps) {
  const DeformedDiagram diag(t1, t2, eps, Metric::L2, Execution::serial);
  const std::size_t n1 = diag.columns(), n2 = diag.rows();
  if (!diag.cell(0, 0).is_free(diag.source()) || !diag.cell(n1 - 1, n2 - 1).is_free(diag.target())) return false;
  const double tol = diag.coord_tolerance();

  // Free and reachable y-ranges on the left sides, x-ranges on the bottom sides.
  auto left_free = [&](std::size_t i, std::size_t j) {
    const CellRect& r = diag.cell(i, j).rect();
    Interval t = diag.cell(i, j).free_interval({r.x0, r.y0}, {r.x0, r.y1});
    return t.empty() ? t : Interval{r.y0 + t.lo * r.height(), r.y0 + t.hi * r.height()};
  };
  auto right_free = [&](std::size_t i, std::size_t j) {
    const CellRect& r = diag.cell(i, j).rect();
    Interval t = diag.cell(i, j).free_interval({r.x1, r.y0}, {r.x1, r.y1});
    return t.empty() ? t : Interval{r.y0 + t.lo * r.height(), r.y0 + t.hi * r.height()};
  };
  auto bottom_free = [&](std::size_t i, std::size_t j) {
    const CellRect& r = diag.cell(i, j).rect();
    Interval t = diag.cell(i, j).free_interval({r.x0, r.y0}, {r.x1, r.y0});
    return t.empty() ? t : Interval{r.x0 + t.lo * r.width(), r.x0 + t.hi * r.width()};
  };
  auto top_free = [&](std::size_t i, std::size_t j) {
    const CellRect& r = diag.cell(i, j).rect();
    Interval t = diag.cell(i, j).free_interval({r.x0, r.y1}, {r.x1, r.y1});
    return t.empty() ? t : Interval{r.x0 + t.lo * r.width(), r.x0 + t.hi * r.width()};
  };

  std::vector<Interval> left_reach(n1 * n2, Interval::none()), bottom_reach(n1 * n2, Interval::none());
  // Along the diagram boundary only a contiguous free stretch from s counts.
  bool open = true;
  for (std::size_t j = 0; j < n2 && open; ++j) {
    Interval f = left_free(0, j);
    const CellRect& r = diag.cell(0, j).rect();
    if (f.empty() || f.lo > r.y0 + tol) break;
    left_reach[j] = f;
    open = f.hi >= r.y1 - tol;
  }
  open = true;
  for (std::size_t i = 0; i < n1 && open; ++i) {
    Interval f = bottom_free(i, 0);
    const CellRect& r = diag.cell(i, 0).rect();
    if (f.empty() || f.lo > r.x0 + tol) break;
    bottom_reach[i * n2] = f;
    open = f.hi >= r.x1 - tol;
  }

  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const Interval lr = left_reach[i * n2 + j];
      const Interval br = bottom_reach[i * n2 + j];
      if (i + 1 == n1 && j + 1 == n2) return !lr.empty() || !br.empty();
      if (i + 1 < n1) {
        Interval f = right_free(i, j);
        Interval reach = !br.empty() ? f : (!lr.empty() ? f.intersect({lr.lo - tol, f.hi}) : Interval::none());
        left_reach[(i + 1) * n2 + j] = reach;
      }
      if (j + 1 < n2) {
        Interval f = top_free(i, j);
        Interval reach = !lr.empty() ? f : (!br.empty() ? f.intersect({br.lo - tol, f.hi}) : Interval::none());
        bottom_reach[i * n2 + j + 1] = reach;
      }
    }
  }
  return false;
}

MaxInDeltaResult solve_maxin_one_minus_delta(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps,
                                             double delta, Execution exec) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  const double n = static_cast<double>(t1.segment_count() + t2.segment_count());
  const SolveOptions opts{Algorithm::steiner, exec};

  MaxInDeltaResult out;
  const DeformedDiagram l1(t1, t2, eps, Metric::L1, exec);
  out.gamma_lb = solve_on_diagram(l1, 0.25, opts).quality_W;

  const DeformedDiagram l2(t1, t2, eps, Metric::L2, exec);
  if (!(out.gamma_lb > 1e-12 * (t1.length() + t2.length()))) {
    out.gamma_lb = 0.0;
    out.degraded = true;
    out.warning = "no positive L1 lower bound; returning the additive approximation";
    out.path = solve_on_diagram(l2, delta, opts);
  } else {
    out.steiner_spacing = out.gamma_lb * delta / (4.0 * n);
    const double grid_spacing = out.steiner_spacing / 4.0;
    constexpr double kMaxLines = 200000.0;
    if (std::max(l2.width(), l2.height()) / grid_spacing > kMaxLines) {
      throw std::runtime_error("steiner spacing too fine for this instance");
    }
    GridLines lines = place_grid_with_spacing(l2, grid_spacing, exec);
    out.path = shortest_forbidden_path(build_graph_gstar(l2, lines, exec).graph);
  }
  out.quality_W = out.path.quality_W;
  return out;
}

std::string solution_to_json(const PathSolution& sol, Algorithm algorithm, double delta, double epsilon,
                             double additive) {
  nlohmann::json path = nlohmann::json::array();
  for (Point2 p : sol.polyline) path.push_back({p.x, p.y});
  nlohmann::json doc{{"quality_B", sol.quality_B},  {"quality_W", sol.quality_W},
                     {"path", path},                {"algorithm", to_string(algorithm)},
                     {"delta", delta},              {"epsilon", epsilon},
                     {"guarantee", {{"additive", additive}}}};
  return doc.dump();
}

}  // namespace robust_frechet
