#ifndef ROBUST_FRECHET_STEINER_HPP
#define ROBUST_FRECHET_STEINER_HPP

#include <cstddef>
#include <vector>

#include "robust_frechet/freespace.hpp"
#include "robust_frechet/grid_graph.hpp"

namespace robust_frechet {

// Points on the boundary of one cell's free region.
class BoundaryPointSet {
 public:
  // Throws std::invalid_argument if a point is outside the cell or off the
  // free-space boundary.
  BoundaryPointSet(const CellFreeSpace& region, std::vector<Point2> points);

  const CellFreeSpace& region() const { return *region_; }
  const std::vector<Point2>& points() const { return points_; }

  // Unvalidated; for callers that produced the points from boundary roots.
  static BoundaryPointSet trusted(const CellFreeSpace& region, std::vector<Point2> points);

 private:
  BoundaryPointSet() = default;
  const CellFreeSpace* region_ = nullptr;
  std::vector<Point2> points_;
};

struct SteinerEdge {
  std::size_t src = 0;
  std::size_t dst = 0;
  double l1 = 0.0;
};

// The first input_count vertices are the input points in order; the rest are
// Steiner points tagged with the recursion depth that created them.
struct SteinerGraph {
  std::vector<Point2> vertices;
  std::vector<int> depth;  // -1 for input points
  std::vector<SteinerEdge> edges;
  std::size_t input_count = 0;

  std::size_t size() const { return vertices.size() + edges.size(); }
};

// Median recursion: on each level the vertical line through the median point
// meets the region in [m2, m1]; points above m1 are reached from the line,
// points below m2 reach it, and points in between are projected onto it.
// Every dominated pair keeps its L1 distance as graph distance.
SteinerGraph build_gprime(const BoundaryPointSet& ps);

// Vertex count of one cell of G*: distinct vertices on the cell sides, on the
// free-space boundary and Steiner points.
struct CellVertexCount {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t side = 0;
  std::size_t boundary = 0;
  std::size_t steiner = 0;
};

std::size_t gstar_cell_vertex_count(const CellVertexCount& c);

struct GStarGraph {
  MonotoneGraph graph;
  std::vector<CellVertexCount> cells;  // row-major like DeformedDiagram::cell
};

// G* over the lines of place_grid(diag, delta).
GStarGraph build_graph_gstar(const DeformedDiagram& diag, double delta, Execution exec = Execution::parallel);
GStarGraph build_graph_gstar(const DeformedDiagram& diag, const GridLines& lines,
                             Execution exec = Execution::parallel);

}  // namespace robust_frechet

#endif  // ROBUST_FRECHET_STEINER_HPP
