#ifndef ROBUST_FRECHET_PATHSEARCH_HPP
#define ROBUST_FRECHET_PATHSEARCH_HPP

#include <string>
#include <vector>

#include "robust_frechet/curves.hpp"
#include "robust_frechet/freespace.hpp"
#include "robust_frechet/grid_graph.hpp"

namespace robust_frechet {

enum class Algorithm { grid, steiner };

const char* to_string(Algorithm a);

struct PathPiece {
  Point2 from;
  Point2 to;
  bool free = false;

  double l1() const { return l1_distance(from, to); }
};

// xy-monotone path from (0,0) to (W,H). quality_B is its forbidden L1
// length, quality_W its free L1 length.
struct PathSolution {
  std::vector<Point2> polyline;
  std::vector<PathPiece> pieces;
  double quality_B = 0.0;
  double quality_W = 0.0;
};

// Minimum forbidden length over source-target paths, which is also the
// maximum free length since every monotone path has the same L1 length.
// Throws std::logic_error when the target is unreachable.
PathSolution shortest_forbidden_path(const MonotoneGraph& g);

struct SolveOptions {
  Algorithm algorithm = Algorithm::steiner;
  Execution execution = Execution::parallel;
};

// Both return a path with optimum <= quality_B <= optimum + delta * max(|T1|, |T2|).
PathSolution solve_minex(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps, double delta,
                         SolveOptions opts = {});
PathSolution solve_maxin(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps, double delta,
                         SolveOptions opts = {});
// Same pipeline on an existing diagram of either metric.
PathSolution solve_on_diagram(const DeformedDiagram& diag, double delta, SolveOptions opts = {});
// The graph solve_on_diagram searches; its grid parameter is delta / 16.
MonotoneGraph build_solver_graph(const DeformedDiagram& diag, double delta, SolveOptions opts = {});

double additive_guarantee(const PolygonalCurve& t1, const PolygonalCurve& t2, double delta);

// Maximal forbidden stretch of a path, from a to b in diagram coordinates.
struct ForbiddenRun {
  Point2 a;
  Point2 b;
};

// Forbidden pieces joined into maximal runs; free gaps shorter than
// merge_tol are absorbed.
std::vector<ForbiddenRun> extract_forbidden_runs(const PathSolution& sol, double merge_tol);

struct ShortcutCurves {
  PolygonalCurve a;
  PolygonalCurve b;
  std::vector<Interval> replaced_a;  // arc-length intervals on T1
  std::vector<Interval> replaced_b;  // arc-length intervals on T2
  double replaced_length = 0.0;
};

class ShortcutError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Replaces the subcurves matched by each forbidden run with straight
// segments. Throws ShortcutError if the start or end points are farther
// apart than epsilon.
ShortcutCurves build_shortcut_curves(const PolygonalCurve& t1, const PolygonalCurve& t2, const PathSolution& sol,
                                     Leash eps);

// Whether the Frechet distance of the curves is at most epsilon.
bool frechet_decision(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps);

struct MaxInDeltaResult {
  double gamma_lb = 0.0;
  double quality_W = 0.0;
  double steiner_spacing = 0.0;
  bool degraded = false;  // gamma_lb was zero; additive result returned
  std::string warning;
  PathSolution path;
};

// Relative (1 - delta) approximation of MaxIn, delta in (0, 1).
MaxInDeltaResult solve_maxin_one_minus_delta(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps,
                                             double delta, Execution exec = Execution::parallel);

std::string solution_to_json(const PathSolution& sol, Algorithm algorithm, double delta, double epsilon,
                             double additive);

}  // namespace robust_frechet

#endif  // ROBUST_FRECHET_PATHSEARCH_HPP
