#ifndef ROBUST_FRECHET_ORACLE_HPP
#define ROBUST_FRECHET_ORACLE_HPP

#include <span>
#include <vector>

#include "robust_frechet/curves.hpp"
#include "robust_frechet/execution.hpp"
#include "robust_frechet/freespace.hpp"

namespace robust_frechet {

struct OracleConfig {
  int resolution = 512;  // at least 8
  Metric metric = Metric::L2;
};

struct OracleResult {
  double value = 0.0;        // minimal forbidden length over lattice paths
  int resolution = 0;
  double error_bound = 0.0;  // nominal gap to the true optimum
};

// Brute-force MinEx: dynamic programme over the lattice spanned by
// `resolution` uniform subdivisions of each side plus all cell boundaries,
// with rightward and upward unit moves weighted by their exact forbidden
// length. Never below the optimum; converges from above.
OracleResult oracle_minex(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps, OracleConfig cfg,
                          Execution exec = Execution::parallel);

// Three-vertex curve a-b-c against the segment d-e with leash 1, for which
// the optimal L2 path length is a root of an irreducible degree-8
// polynomial.
struct UnsolvableFixture {
  PolygonalCurve t1;
  PolygonalCurve t2;
  double epsilon = 1.0;
};

UnsolvableFixture unsolvable_fixture();

struct Case1Result {
  double closed_form = 0.0;  // (2851 - 1200 sqrt 2) / 240
  double numeric = 0.0;      // same value from a golden-section search
  Point2 exit_point;         // where the path leaves the first ellipse
};

// Best path that only uses the free space of the first cell.
Case1Result reproduce_unsolvable_case1();

struct Case2Result {
  double h = 0.0;
  double length = 0.0;
  double h_min = 0.0;  // feasible range of h
  double h_max = 0.0;
  double polynomial_residual = 0.0;  // |p(h)| / sum |c_k h^k|
};

// Path length through both ellipses as a function of the crossing height h.
double case2_length(double h);
double case2_length_derivative(double h);
// Relative residual of the degree-8 stationarity polynomial at h.
double case2_polynomial_residual(double h);

// Minimises case2_length by bisection on its derivative.
Case2Result reproduce_unsolvable_case2();

struct RatioSample {
  double separation = 0.0;
  double omega = 0.0;      // length of the free-space boundary inside the cell
  double quality_W = 0.0;  // best free length of a monotone path
  double ratio = 0.0;      // omega / quality_W, infinite when quality_W = 0
};

// Antiparallel segments (0,0)->(length,0) and (length,sep)->(0,sep). The
// free space is a thin band along the anti-diagonal whose boundary length
// stays put while the matched length shrinks with its width.
std::vector<RatioSample> appendix_ratio_growth(std::span<const double> separations, double epsilon = 1.0,
                                               double length = 1.0, int resolution = 1024);

}  // namespace robust_frechet

#endif  // ROBUST_FRECHET_ORACLE_HPP
