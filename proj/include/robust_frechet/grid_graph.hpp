#ifndef ROBUST_FRECHET_GRID_GRAPH_HPP
#define ROBUST_FRECHET_GRID_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "robust_frechet/curves.hpp"
#include "robust_frechet/execution.hpp"
#include "robust_frechet/freespace.hpp"

namespace robust_frechet {

enum class LineKind { cell_boundary, equidistant, intersection };

struct GridLine {
  double position = 0.0;
  LineKind kind = LineKind::equidistant;
};

// Axis-parallel lines of the arrangement, sorted by position and free of
// near-duplicates.
struct GridLines {
  std::vector<GridLine> vertical;
  std::vector<GridLine> horizontal;
  std::size_t equidistant_vertical = 0;
  std::size_t equidistant_horizontal = 0;

  std::vector<double> xs() const;
  std::vector<double> ys() const;
};

// ceil(n / delta) equidistant lines per direction (at least two, boundaries
// included), all cell boundaries, and an orthogonal intersection line through
// every crossing of those lines with a free-space boundary.
GridLines place_grid(const DeformedDiagram& diag, double delta, Execution exec = Execution::parallel);

// Same, but the equidistant family is given by its maximal spacing.
GridLines place_grid_with_spacing(const DeformedDiagram& diag, double spacing,
                                  Execution exec = Execution::parallel);

enum class VertexKind { grid_crossing, ellipse_boundary, steiner, corner };

const char* to_string(VertexKind k);

using VertexId = std::uint32_t;

struct GraphVertex {
  Point2 pos;
  VertexKind kind = VertexKind::grid_crossing;
};

// Directed xy-monotone edge. [free_lo, free_hi] is the parameter range of the
// edge that lies in free space (empty when free_lo > free_hi).
struct GraphEdge {
  VertexId src = 0;
  VertexId dst = 0;
  double l1 = 0.0;
  double forbidden = 0.0;
  double free_lo = 1.0;
  double free_hi = 0.0;

  double free_length() const { return l1 - forbidden; }
};

struct MonotoneGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  VertexId source = 0;
  VertexId target = 0;
};

// Edge weighted by the exact free part of segment src-dst in the diagram.
GraphEdge make_weighted_edge(const DeformedDiagram& diag, VertexId src, Point2 p, VertexId dst, Point2 q);
// Edge known to lie in free space.
GraphEdge make_free_edge(VertexId src, Point2 p, VertexId dst, Point2 q);

bool is_monotone_step(Point2 p, Point2 q);

// Kahn order; throws std::logic_error on a cycle.
std::vector<VertexId> topological_order(const MonotoneGraph& g);

struct GraphSize {
  std::size_t vertices = 0;
  std::size_t edges = 0;
};

GraphSize graph_size_report(const MonotoneGraph& g);

// {"vertices":[{"id","x","y","kind"}],"edges":[{"src","dst","l1","forbidden"}]}
std::string graph_to_json(const MonotoneGraph& g);

MonotoneGraph build_graph_g(const DeformedDiagram& diag, const GridLines& lines,
                            Execution exec = Execution::parallel);

}  // namespace robust_frechet

#endif  // ROBUST_FRECHET_GRID_GRAPH_HPP
