#include "robust_frechet/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "parallel.hpp"

namespace robust_frechet {

namespace {

std::vector<double> lattice(std::span<const double> bounds, int resolution, double tol) {
  const double extent = bounds.back();
  std::vector<double> v(bounds.begin(), bounds.end());
  for (int k = 0; k <= resolution; ++k) v.push_back(extent * k / resolution);
  std::sort(v.begin(), v.end());
  std::vector<double> out;
  for (double x : v) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  out.back() = extent;
  return out;
}

// Index of the slab holding [v[k], v[k+1]].
std::vector<std::size_t> slab_of_steps(const std::vector<double>& v, std::span<const double> bounds) {
  std::vector<std::size_t> out(v.size() - 1);
  for (std::size_t k = 0; k + 1 < v.size(); ++k) {
    double mid = 0.5 * (v[k] + v[k + 1]);
    auto it = std::upper_bound(bounds.begin(), bounds.end(), mid);
    std::size_t s = static_cast<std::size_t>(it - bounds.begin());
    out[k] = std::min(s == 0 ? 0 : s - 1, bounds.size() - 2);
  }
  return out;
}

}  // namespace

OracleResult oracle_minex(const PolygonalCurve& t1, const PolygonalCurve& t2, Leash eps, OracleConfig cfg,
                          Execution exec) {
  if (cfg.resolution < 8) throw std::invalid_argument("oracle resolution must be at least 8");
  const DeformedDiagram diag(t1, t2, eps, cfg.metric, exec);
  const double tol = diag.coord_tolerance();
  const std::vector<double> xs = lattice(diag.column_bounds(), cfg.resolution, tol);
  const std::vector<double> ys = lattice(diag.row_bounds(), cfg.resolution, tol);
  const std::size_t nx = xs.size(), ny = ys.size();
  const std::vector<std::size_t> col_step = slab_of_steps(xs, diag.column_bounds());
  const std::vector<std::size_t> row_step = slab_of_steps(ys, diag.row_bounds());
  std::vector<IndexRange> col_at(nx), row_at(ny);
  for (std::size_t a = 0; a < nx; ++a) col_at[a] = diag.column_range(xs[a]);
  for (std::size_t b = 0; b < ny; ++b) row_at[b] = diag.row_range(ys[b]);

  // Forbidden length of the unit moves leaving lattice point (a, b).
  auto cost_right = [&](std::size_t a, std::size_t b) {
    const Point2 p{xs[a], ys[b]}, q{xs[a + 1], ys[b]};
    double best = 0.0;
    for (std::size_t j = row_at[b].first; j <= row_at[b].last; ++j) {
      best = std::max(best, diag.cell(col_step[a], j).free_interval(p, q).length());
    }
    return (q.x - p.x) * (1.0 - best);
  };
  auto cost_up = [&](std::size_t a, std::size_t b) {
    const Point2 p{xs[a], ys[b]}, q{xs[a], ys[b + 1]};
    double best = 0.0;
    for (std::size_t i = col_at[a].first; i <= col_at[a].last; ++i) {
      best = std::max(best, diag.cell(i, row_step[b]).free_interval(p, q).length());
    }
    return (q.y - p.y) * (1.0 - best);
  };
  auto relax = [&](double from_left, std::size_t a, std::size_t b, double from_below) {
    double v = std::numeric_limits<double>::infinity();
    if (a > 0) v = std::min(v, from_left + cost_right(a - 1, b));
    if (b > 0) v = std::min(v, from_below + cost_up(a, b - 1));
    return v;
  };

  double value = 0.0;
  if (exec == Execution::serial) {
    std::vector<double> row(nx);
    for (std::size_t b = 0; b < ny; ++b) {
      for (std::size_t a = 0; a < nx; ++a) {
        if (a == 0 && b == 0) {
          row[a] = 0.0;
          continue;
        }
        row[a] = relax(a > 0 ? row[a - 1] : 0.0, a, b, row[a]);
      }
    }
    value = row[nx - 1];
  } else {
    // Anti-diagonal wavefront; cur[a] holds the value at (a, d - a).
    std::vector<double> prev(nx, 0.0), cur(nx, 0.0);
    for (std::size_t d = 1; d < nx + ny - 1; ++d) {
      const std::size_t lo = d >= ny ? d - ny + 1 : 0;
      const std::size_t hi = std::min(d, nx - 1);
      detail::for_each_index(hi - lo + 1, exec, [&](std::size_t k) {
        const std::size_t a = lo + k, b = d - a;
        cur[a] = relax(a > 0 ? prev[a - 1] : 0.0, a, b, b > 0 ? prev[a] : 0.0);
      });
      std::swap(prev, cur);
    }
    value = prev[nx - 1];
  }
  const double n = static_cast<double>(diag.columns() + diag.rows());
  return {value, cfg.resolution, 4.0 * n * (diag.width() + diag.height()) / cfg.resolution};
}

UnsolvableFixture unsolvable_fixture() {
  return {PolygonalCurve({{0.0, 0.0}, {1.0, 0.0}, {-1.0, -31.0 / 240.0}}),
          PolygonalCurve({{-0.5, 0.75}, {2.5, 13.0 / 8.0}}), 1.0};
}

namespace {

template <class F>
double golden_section_max(F f, double lo, double hi, int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int k = 0; k < iterations; ++k) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

Case1Result reproduce_unsolvable_case1() {
  const double total = 721.0 / 240.0 + 25.0 / 8.0;
  // Boundary of the first ellipse: x - 24/25 y + 1/2 = cos t, 7/25 y + 3/4 = sin t.
  auto point = [](double t) {
    double y = (std::sin(t) - 0.75) * 25.0 / 7.0;
    double x = std::cos(t) + 24.0 / 25.0 * y - 0.5;
    return Point2{x, y};
  };
  // Leaving at p, the rest of the path to t is forbidden: total - (x + y).
  auto gain = [&](double t) {
    Point2 p = point(t);
    return p.x + p.y;
  };
  const double t_best = golden_section_max(gain, 0.0, std::acos(-1.0) / 2.0, 200);
  Case1Result r;
  r.closed_form = (2851.0 - 1200.0 * std::sqrt(2.0)) / 240.0;
  r.exit_point = point(t_best);
  r.numeric = total - gain(t_best);
  return r;
}

double case2_length(double h) {
  const double r1 = 4375.0 - 4200.0 * h - 784.0 * h * h;
  const double r2 = 165296875.0 - 212680800.0 * h - 27373824.0 * h * h;
  return 1591.0 / 240.0 - 49.0 / 25.0 * h - std::sqrt(std::max(r1, 0.0)) / 100.0 -
         std::sqrt(std::max(r2, 0.0)) / 12025.0;
}

double case2_length_derivative(double h) {
  const double r1 = 4375.0 - 4200.0 * h - 784.0 * h * h;
  const double r2 = 165296875.0 - 212680800.0 * h - 27373824.0 * h * h;
  const double d1 = -4200.0 - 1568.0 * h;
  const double d2 = -212680800.0 - 54747648.0 * h;
  return -49.0 / 25.0 - d1 / (200.0 * std::sqrt(r1)) - d2 / (2.0 * 12025.0 * std::sqrt(r2));
}

double case2_polynomial_residual(double h) {
  static const std::array<long double, 9> c{
      585090042379589947534557557525634765625.0L,  -3039825965000401080955586792871093750000.0L,
      5307213095548843266935155031210937500000.0L, -2973595218630130711131340711267500000000.0L,
      -649444075888789852190828979088700000000.0L, 562445109533777824218782819614464000000.0L,
      193996238215889538903991144689745920000.0L,  21705929355568145355212682312548352000.0L,
      826789346560923302640987287586865152.0L};
  const long double x = h;
  long double value = 0.0L, scale = 0.0L, power = 1.0L;
  for (long double ck : c) {
    value += ck * power;
    scale += std::abs(ck * power);
    power *= x;
  }
  return static_cast<double>(std::abs(value) / scale);
}

Case2Result reproduce_unsolvable_case2() {
  // Both radicands must be nonnegative; the second one vanishes first.
  auto positive_root = [](double a, double b, double c) {  // a h^2 + b h + c, a < 0
    const double disc = b * b - 4.0 * a * c;
    const double q = -0.5 * (b - std::sqrt(disc));
    return std::max(q / a, c / q);
  };
  Case2Result r;
  r.h_min = 0.0;
  r.h_max = std::min(positive_root(-784.0, -4200.0, 4375.0), positive_root(-27373824.0, -212680800.0, 165296875.0));

  double lo = r.h_min;
  double hi = std::nextafter(r.h_max, 0.0);
  while (!(case2_length_derivative(hi) > 0.0) && hi > lo) hi = std::nextafter(hi, 0.0);
  if (!(case2_length_derivative(lo) < 0.0) || !(case2_length_derivative(hi) > 0.0)) {
    throw std::logic_error("case 2: derivative does not change sign on the feasible interval");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (case2_length_derivative(mid) < 0.0 ? lo : hi) = mid;
  }
  r.h = 0.5 * (lo + hi);
  r.length = case2_length(r.h);
  r.polynomial_residual = case2_polynomial_residual(r.h);
  return r;
}

std::vector<RatioSample> appendix_ratio_growth(std::span<const double> separations, double epsilon, double length,
                                               int resolution) {
  std::vector<RatioSample> out;
  const int slices = std::max(resolution, 64);
  for (double sep : separations) {
    if (!(sep >= 0.0 && sep <= epsilon)) throw std::invalid_argument("separation must lie in [0, epsilon]");
    const PolygonalCurve a({{0.0, 0.0}, {length, 0.0}});
    const PolygonalCurve b({{length, sep}, {0.0, sep}});
    const DeformedDiagram diag(a, b, Leash(epsilon), Metric::L2, Execution::serial);
    const CellFreeSpace& cell = diag.cell(0, 0);

    // Boundary arcs traced on vertical slices; a root clamped onto the cell
    // side is not on the curve.
    RatioSample s;
    s.separation = sep;
    const double h = diag.height();
    std::array<bool, 2> had{false, false};
    std::array<Point2, 2> last{};
    for (int k = 0; k <= slices; ++k) {
      const double x = diag.width() * k / slices;
      Interval t = cell.free_parameter_range({x, 0.0}, {x, h});
      std::array<double, 2> roots{t.lo, t.hi};
      for (int side = 0; side < 2; ++side) {
        const bool on = !t.empty() && roots[side] >= 0.0 && roots[side] <= 1.0;
        const Point2 p{x, roots[side] * h};
        if (on && had[side]) s.omega += euclidean_distance(last[side], p);
        had[side] = on;
        last[side] = p;
      }
    }
    const OracleResult o = oracle_minex(a, b, Leash(epsilon), {resolution, Metric::L2}, Execution::serial);
    s.quality_W = std::max(0.0, diag.width() + diag.height() - o.value);
    s.ratio = s.quality_W > 0.0 ? s.omega / s.quality_W : std::numeric_limits<double>::infinity();
    out.push_back(s);
  }
  return out;
}

}  // namespace robust_frechet
