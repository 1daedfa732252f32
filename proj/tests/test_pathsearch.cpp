#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "json.hpp"
#include "robust_frechet/oracle.hpp"
#include "robust_frechet/pathsearch.hpp"
#include "support.hpp"

using namespace robust_frechet;

namespace {

// Structural checks plus an independent free/forbidden audit of each piece.
void expect_valid_path(const PathSolution& s, const PolygonalCurve& a, const PolygonalCurve& b, double eps,
                       Metric metric = Metric::L2) {
  const double total = a.length() + b.length();
  const double tol = 1e-9 * total;
  ASSERT_FALSE(s.polyline.empty());
  EXPECT_EQ(s.polyline.front(), (Point2{0.0, 0.0}));
  EXPECT_NEAR(s.polyline.back().x, a.length(), tol);
  EXPECT_NEAR(s.polyline.back().y, b.length(), tol);
  for (std::size_t k = 1; k < s.polyline.size(); ++k) {
    ASSERT_GE(s.polyline[k].x, s.polyline[k - 1].x);
    ASSERT_GE(s.polyline[k].y, s.polyline[k - 1].y);
  }
  double forbidden = 0.0, free = 0.0;
  for (const PathPiece& p : s.pieces) {
    (p.free ? free : forbidden) += p.l1();
    if (p.l1() < 1e-6 * total) continue;
    Point2 mid = 0.5 * (p.from + p.to);
    double d = metric == Metric::L2 ? rf_test::matched_distance(a, b, mid) : rf_test::matched_l1_distance(a, b, mid);
    if (std::abs(d - eps) < 1e-7) continue;
    EXPECT_EQ(p.free, d < eps) << "piece midpoint (" << mid.x << ", " << mid.y << ") at distance " << d;
  }
  EXPECT_NEAR(forbidden, s.quality_B, tol);
  EXPECT_NEAR(free, s.quality_W, tol);
  EXPECT_NEAR(s.quality_B + s.quality_W, total, tol);
}

}  // namespace

TEST(Solve, FreeAndForbiddenExtremes) {
  std::mt19937_64 rng(51);
  PolygonalCurve a = rf_test::random_curve(rng, 3), b = rf_test::random_curve(rng, 2);
  for (Algorithm alg : {Algorithm::grid, Algorithm::steiner}) {
    PathSolution free = solve_minex(a, b, Leash(100.0), 0.2, {alg});
    EXPECT_EQ(free.quality_B, 0.0);
    EXPECT_NEAR(free.quality_W, a.length() + b.length(), 1e-12);
    PolygonalCurve far({{50, 50}, {51, 50}});
    PathSolution none = solve_minex(a, far, Leash(0.5), 0.2, {alg});
    EXPECT_NEAR(none.quality_B, a.length() + far.length(), 1e-12);
    EXPECT_EQ(none.quality_W, 0.0);
  }
}

TEST(Solve, IdenticalCurvesAreFullyMatched) {
  std::mt19937_64 rng(52);
  PolygonalCurve a = rf_test::random_curve(rng, 4);
  for (double eps : {1e-3, 0.1}) {
    PathSolution s = solve_minex(a, a, Leash(eps), 0.25);
    EXPECT_NEAR(s.quality_B, 0.0, 1e-9);
    expect_valid_path(s, a, a, eps);
  }
}

TEST(Solve, ReferenceInstanceWithinGuarantee) {
  UnsolvableFixture f = unsolvable_fixture();
  const double optimum = reproduce_unsolvable_case2().length;
  struct Run {
    Algorithm alg;
    double delta;
  };
  for (Run r : {Run{Algorithm::steiner, 0.01}, Run{Algorithm::steiner, 0.1}, Run{Algorithm::grid, 0.1}}) {
    PathSolution s = solve_minex(f.t1, f.t2, Leash(f.epsilon), r.delta, {r.alg});
    EXPECT_GE(s.quality_B, optimum - 1e-9) << to_string(r.alg) << " " << r.delta;
    EXPECT_LE(s.quality_B, optimum + additive_guarantee(f.t1, f.t2, r.delta)) << to_string(r.alg) << " " << r.delta;
    expect_valid_path(s, f.t1, f.t2, f.epsilon);
  }
}

TEST(Solve, MinExAndMaxInAreDual) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    rf_test::Instance in = rf_test::random_instance(rng, 2, 3, false);
    PathSolution b = solve_minex(in.t1, in.t2, Leash(in.eps), 0.2);
    PathSolution w = solve_maxin(in.t1, in.t2, Leash(in.eps), 0.2);
    EXPECT_EQ(b.quality_B, w.quality_B);
    EXPECT_EQ(b.quality_W, w.quality_W);
    EXPECT_NEAR(w.quality_W, in.t1.length() + in.t2.length() - b.quality_B, 1e-9);
  }
}

TEST(Solve, RejectsBadDelta) {
  UnsolvableFixture f = unsolvable_fixture();
  EXPECT_THROW(solve_minex(f.t1, f.t2, Leash(1.0), 0.0), std::invalid_argument);
  EXPECT_THROW(solve_minex(f.t1, f.t2, Leash(1.0), -0.1), std::invalid_argument);
}

class SolveAgainstOracle : public ::testing::TestWithParam<int> {};

TEST_P(SolveAgainstOracle, WithinAdditiveBound) {
  std::mt19937_64 rng(600 + GetParam());
  const std::size_t n1 = 1 + GetParam() % 3, n2 = 1 + (GetParam() / 3) % 2;
  rf_test::Instance in = rf_test::random_instance(rng, n1, n2, GetParam() % 2 == 0);
  const double delta = 0.1;
  OracleResult o = oracle_minex(in.t1, in.t2, Leash(in.eps), {2048, Metric::L2});
  const double slack = additive_guarantee(in.t1, in.t2, delta);
  PathSolution st = solve_minex(in.t1, in.t2, Leash(in.eps), delta, {Algorithm::steiner});
  PathSolution gr = solve_minex(in.t1, in.t2, Leash(in.eps), delta, {Algorithm::grid});
  for (const PathSolution* s : {&st, &gr}) {
    EXPECT_LE(s->quality_B, o.value + slack);
    EXPECT_GE(s->quality_B, o.value - o.error_bound);
    expect_valid_path(*s, in.t1, in.t2, in.eps);
  }
  EXPECT_LE(st.quality_B, gr.quality_B + 1e-9);
}

INSTANTIATE_TEST_SUITE_P(Seeds, SolveAgainstOracle, ::testing::Range(0, 12));

TEST(Solve, LargerLeashNeverCostsMoreThanSlack) {
  std::mt19937_64 rng(54);
  rf_test::Instance in = rf_test::random_instance(rng, 3, 2, false);
  const double delta = 0.1;
  const double slack = additive_guarantee(in.t1, in.t2, delta);
  double prev = INFINITY;
  for (double eps = 0.2; eps <= 1.4; eps += 0.2) {
    double b = solve_minex(in.t1, in.t2, Leash(eps), delta).quality_B;
    EXPECT_LE(b, prev + slack) << eps;
    prev = b;
  }
}

TEST(Solve, HalvingDeltaTightensTheBound) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 4; ++trial) {
    rf_test::Instance in = rf_test::random_instance(rng, 2, 2, true);
    double delta = 0.4;
    double prev = solve_minex(in.t1, in.t2, Leash(in.eps), delta).quality_B;
    for (int k = 0; k < 3; ++k) {
      delta /= 2;
      double b = solve_minex(in.t1, in.t2, Leash(in.eps), delta).quality_B;
      EXPECT_LE(b, prev + additive_guarantee(in.t1, in.t2, delta));
      prev = b;
    }
  }
}

TEST(Solve, L1FreePiecesAreL2Free) {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 5; ++trial) {
    rf_test::Instance in = rf_test::random_instance(rng, 2, 2, true);
    DeformedDiagram d1 = build_diagram(in.t1, in.t2, Leash(in.eps), Metric::L1);
    PathSolution s = solve_on_diagram(d1, 0.2);
    expect_valid_path(s, in.t1, in.t2, in.eps, Metric::L1);
    for (const PathPiece& p : s.pieces) {
      if (!p.free) continue;
      for (int k = 0; k <= 8; ++k) {
        Point2 x = p.from + (k / 8.0) * (p.to - p.from);
        ASSERT_LE(rf_test::matched_distance(in.t1, in.t2, x), in.eps * (1.0 + 1e-9));
      }
    }
    PathSolution s2 = solve_minex(in.t1, in.t2, Leash(in.eps), 0.2);
    EXPECT_LE(s.quality_W, s2.quality_W + additive_guarantee(in.t1, in.t2, 0.2));
  }
}

TEST(Shortcut, NothingToReplaceWhenFullyFree) {
  std::mt19937_64 rng(57);
  PolygonalCurve a = rf_test::random_curve(rng, 3);
  PathSolution s = solve_minex(a, a, Leash(0.1), 0.2);
  ASSERT_EQ(s.quality_B, 0.0);
  ShortcutCurves sc = build_shortcut_curves(a, a, s, Leash(0.1));
  EXPECT_TRUE(std::equal(sc.a.vertices().begin(), sc.a.vertices().end(), a.vertices().begin(), a.vertices().end()));
  EXPECT_TRUE(sc.replaced_a.empty());
  EXPECT_EQ(sc.replaced_length, 0.0);
}

TEST(Shortcut, ReferenceInstanceViolatesEndPrecondition) {
  UnsolvableFixture f = unsolvable_fixture();
  PathSolution s = solve_minex(f.t1, f.t2, Leash(f.epsilon), 0.05);
  EXPECT_EQ(extract_forbidden_runs(s, 1e-12 * (f.t1.length() + f.t2.length())).size(), 2u);
  try {
    build_shortcut_curves(f.t1, f.t2, s, Leash(f.epsilon));
    FAIL() << "expected ShortcutError";
  } catch (const ShortcutError& e) {
    EXPECT_NE(std::string(e.what()).find("end"), std::string::npos) << e.what();
  }
  PolygonalCurve shifted({{-0.5, 0.7}, {2.5, 13.0 / 8.0}});
  EXPECT_THROW(build_shortcut_curves(f.t1, shifted, s, Leash(0.5)), ShortcutError);
}

TEST(Shortcut, RunsMergeAcrossTinyFreeGaps) {
  PathSolution s;
  s.pieces = {{{0, 0}, {1, 0}, false}, {{1, 0}, {1, 1e-14}, true}, {{1, 1e-14}, {2, 1}, false},
              {{2, 1}, {3, 1}, true},  {{3, 1}, {3, 2}, false}};
  auto runs = extract_forbidden_runs(s, 1e-12);
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].b, (Point2{2, 1}));
  EXPECT_EQ(runs[1].a, (Point2{3, 1}));
}

class ShortcutRandom : public ::testing::TestWithParam<int> {};

TEST_P(ShortcutRandom, ShortcutCurvesAreWithinEpsilon) {
  std::mt19937_64 rng(700 + GetParam());
  rf_test::Instance in = rf_test::random_instance(rng, 2 + GetParam() % 2, 2, true);
  PathSolution s = solve_minex(in.t1, in.t2, Leash(in.eps), 0.1);
  ShortcutCurves sc = build_shortcut_curves(in.t1, in.t2, s, Leash(in.eps));
  EXPECT_NEAR(sc.replaced_length, s.quality_B, 1e-9);
  EXPECT_TRUE(frechet_decision(sc.a, sc.b, Leash(in.eps * (1.0 + 1e-9))));
  EXPECT_EQ(sc.a.front(), in.t1.front());
  EXPECT_EQ(sc.b.back(), in.t2.back());
  if (s.quality_B > 0.0) EXPECT_FALSE(sc.replaced_a.empty() && sc.replaced_b.empty());
}

INSTANTIATE_TEST_SUITE_P(Seeds, ShortcutRandom, ::testing::Range(0, 10));

TEST(FrechetDecision, AgreesWithLatticeSearch) {
  std::mt19937_64 rng(58);
  int yes = 0, no = 0;
  for (int trial = 0; trial < 40; ++trial) {
    PolygonalCurve a = rf_test::random_curve(rng, 1 + trial % 3), b = rf_test::random_curve(rng, 1 + trial % 2);
    std::uniform_real_distribution<double> u(0.3, 1.5);
    const double eps = u(rng);
    const bool dec = frechet_decision(a, b, Leash(eps));
    if (rf_test::lattice_decision(a, b, eps, 256)) EXPECT_TRUE(dec) << trial;
    if (dec) EXPECT_TRUE(rf_test::lattice_decision(a, b, eps * 1.05, 256)) << trial;
    (dec ? yes : no)++;
  }
  EXPECT_GT(yes, 3);
  EXPECT_GT(no, 3);
}

TEST(FrechetDecision, KnownCases) {
  PolygonalCurve a({{0, 0}, {1, 0}}), b({{0, 1}, {1, 1}});
  EXPECT_TRUE(frechet_decision(a, b, Leash(1.0)));
  EXPECT_FALSE(frechet_decision(a, b, Leash(0.999)));
  // Backtracking zig-zag needs the full excursion width.
  PolygonalCurve z({{0, 0}, {2, 0}, {1, 0}, {3, 0}});
  PolygonalCurve s({{0, 0}, {3, 0}});
  EXPECT_TRUE(frechet_decision(z, s, Leash(0.5)));
  EXPECT_FALSE(frechet_decision(z, s, Leash(0.49)));
}

TEST(MaxInOneMinusDelta, IdenticalCurves) {
  std::mt19937_64 rng(59);
  PolygonalCurve a = rf_test::random_curve(rng, 2);
  MaxInDeltaResult r = solve_maxin_one_minus_delta(a, a, Leash(0.2), 0.5);
  EXPECT_FALSE(r.degraded);
  EXPECT_NEAR(r.quality_W, 2.0 * a.length(), 1e-9);
  EXPECT_NEAR(r.gamma_lb, 2.0 * a.length(), 1e-9);
}

TEST(MaxInOneMinusDelta, FallsBackWithoutLowerBound) {
  PolygonalCurve a({{0, 0}, {1, 0}}), b({{10, 10}, {11, 10}});
  MaxInDeltaResult r = solve_maxin_one_minus_delta(a, b, Leash(0.5), 0.3);
  EXPECT_TRUE(r.degraded);
  EXPECT_FALSE(r.warning.empty());
  EXPECT_EQ(r.quality_W, 0.0);
  EXPECT_THROW(solve_maxin_one_minus_delta(a, b, Leash(0.5), 1.0), std::invalid_argument);
  EXPECT_THROW(solve_maxin_one_minus_delta(a, b, Leash(0.5), 0.0), std::invalid_argument);
}

TEST(MaxInOneMinusDelta, RelativeBoundAgainstOracle) {
  std::mt19937_64 rng(60);
  int checked = 0;
  for (int trial = 0; trial < 6; ++trial) {
    rf_test::Instance in = rf_test::random_instance(rng, 1 + trial % 2, 1, true);
    const double delta = 0.5;
    MaxInDeltaResult r = solve_maxin_one_minus_delta(in.t1, in.t2, Leash(in.eps), delta);
    if (r.degraded) continue;
    OracleResult o = oracle_minex(in.t1, in.t2, Leash(in.eps), {2048, Metric::L2});
    const double total = in.t1.length() + in.t2.length();
    const double w_lower = total - o.value;  // the optimum is at least this
    EXPECT_GE(r.quality_W, (1.0 - delta) * w_lower - 1e-9) << trial;
    EXPECT_LE(r.quality_W, total - o.value + o.error_bound) << trial;
    EXPECT_LE(r.gamma_lb, r.quality_W + 1e-9);
    expect_valid_path(r.path, in.t1, in.t2, in.eps);
    ++checked;
  }
  EXPECT_GE(checked, 3);
}

TEST(SolutionJson, HasDocumentedKeys) {
  UnsolvableFixture f = unsolvable_fixture();
  PathSolution s = solve_minex(f.t1, f.t2, Leash(1.0), 0.2);
  auto doc = nlohmann::json::parse(solution_to_json(s, Algorithm::steiner, 0.2, 1.0, 0.6));
  EXPECT_DOUBLE_EQ(doc["quality_B"].get<double>(), s.quality_B);
  EXPECT_DOUBLE_EQ(doc["quality_W"].get<double>(), s.quality_W);
  EXPECT_EQ(doc["algorithm"], "steiner");
  EXPECT_EQ(doc["path"].size(), s.polyline.size());
  EXPECT_DOUBLE_EQ(doc["guarantee"]["additive"].get<double>(), 0.6);
  EXPECT_DOUBLE_EQ(doc["delta"].get<double>(), 0.2);
  EXPECT_DOUBLE_EQ(doc["epsilon"].get<double>(), 1.0);
}
