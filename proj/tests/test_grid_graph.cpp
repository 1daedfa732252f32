#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "json.hpp"
#include "robust_frechet/grid_graph.hpp"
#include "robust_frechet/oracle.hpp"
#include "support.hpp"

using namespace robust_frechet;

namespace {

std::size_t count_kind(const std::vector<GridLine>& lines, LineKind k) {
  std::size_t n = 0;
  for (const GridLine& l : lines) n += l.kind == k;
  return n;
}

void expect_graph_invariants(const MonotoneGraph& g, const DeformedDiagram& d) {
  EXPECT_EQ(g.vertices[g.source].pos, d.source());
  EXPECT_EQ(g.vertices[g.target].pos, d.target());
  for (const GraphEdge& e : g.edges) {
    ASSERT_TRUE(is_monotone_step(g.vertices[e.src].pos, g.vertices[e.dst].pos));
    ASSERT_GE(e.forbidden, 0.0);
    ASSERT_LE(e.forbidden, e.l1);
    ASSERT_NEAR(e.l1, l1_distance(g.vertices[e.src].pos, g.vertices[e.dst].pos), 1e-15 * (d.width() + d.height()));
  }
  EXPECT_NO_THROW(topological_order(g));
}

}  // namespace

TEST(PlaceGrid, CountsFollowCeiling) {
  PolygonalCurve a({{0, 0}, {1, 0}}), b({{0, 5}, {1, 5}});
  DeformedDiagram d = build_diagram(a, b, Leash(0.1), Metric::L2);
  GridLines l = place_grid(d, 1.0);
  EXPECT_EQ(l.equidistant_vertical, 2u);
  EXPECT_EQ(l.vertical.size(), 2u);  // equidistant lines coincide with the boundaries
  EXPECT_EQ(l.horizontal.size(), 2u);
  GridLines fine = place_grid(d, 0.3);
  EXPECT_EQ(fine.equidistant_vertical, 7u);
  EXPECT_EQ(fine.vertical.size(), 7u);
  EXPECT_EQ(count_kind(fine.vertical, LineKind::intersection), 0u);
  EXPECT_THROW(place_grid(d, 0.0), std::invalid_argument);
  EXPECT_THROW(place_grid(d, -1.0), std::invalid_argument);
}

TEST(PlaceGrid, CellBoundariesAlwaysPresent) {
  std::mt19937_64 rng(31);
  PolygonalCurve a = rf_test::random_curve(rng, 3), b = rf_test::random_curve(rng, 2);
  DeformedDiagram d = build_diagram(a, b, Leash(0.5), Metric::L2);
  GridLines l = place_grid(d, 0.7);
  for (double x : d.column_bounds()) {
    bool present = false;
    for (const GridLine& g : l.vertical) present |= g.position == x;
    EXPECT_TRUE(present) << x;
  }
  for (std::size_t k = 1; k < l.vertical.size(); ++k) {
    EXPECT_GT(l.vertical[k].position - l.vertical[k - 1].position, d.coord_tolerance());
  }
}

TEST(PlaceGrid, IntersectionLinesPassThroughBoundaryPoints) {
  UnsolvableFixture f = unsolvable_fixture();
  DeformedDiagram d = build_diagram(f.t1, f.t2, Leash(1.0), Metric::L2);
  GridLines l = place_grid(d, 0.25);
  std::size_t checked = 0;
  auto on_boundary = [&](Point2 p) {
    for (const CellFreeSpace* c : d.cells_at(p)) {
      if (std::abs(c->residual(p)) <= 1e-9 * c->length_scale() * c->length_scale()) return true;
    }
    return false;
  };
  for (const GridLine& h : l.horizontal) {
    if (h.kind != LineKind::intersection) continue;
    bool hit = false;
    for (const GridLine& v : l.vertical) hit = hit || (v.kind != LineKind::intersection && on_boundary({v.position, h.position}));
    EXPECT_TRUE(hit) << h.position;
    ++checked;
  }
  for (const GridLine& v : l.vertical) {
    if (v.kind != LineKind::intersection) continue;
    bool hit = false;
    for (const GridLine& h : l.horizontal) hit = hit || (h.kind != LineKind::intersection && on_boundary({v.position, h.position}));
    EXPECT_TRUE(hit) << v.position;
    ++checked;
  }
  EXPECT_GT(checked, 10u);
}

TEST(BuildGraphG, FullyFreeAndFullyForbidden) {
  std::mt19937_64 rng(32);
  PolygonalCurve a = rf_test::random_curve(rng, 2), b = rf_test::random_curve(rng, 2);
  DeformedDiagram free_d = build_diagram(a, b, Leash(100.0), Metric::L2);
  MonotoneGraph g = build_graph_g(free_d, place_grid(free_d, 0.5));
  expect_graph_invariants(g, free_d);
  for (const GraphEdge& e : g.edges) EXPECT_EQ(e.forbidden, 0.0);

  PolygonalCurve far({{10, 10}, {11, 10}, {11, 12}});
  DeformedDiagram forb = build_diagram(a, far, Leash(0.5), Metric::L2);
  MonotoneGraph h = build_graph_g(forb, place_grid(forb, 0.5));
  expect_graph_invariants(h, forb);
  for (const GraphEdge& e : h.edges) EXPECT_EQ(e.forbidden, e.l1);
}

TEST(BuildGraphG, HandCountOnForbiddenCell) {
  PolygonalCurve a({{0, 0}, {1, 0}}), b({{0, 9}, {2, 9}});
  DeformedDiagram d = build_diagram(a, b, Leash(1.0), Metric::L2);
  GraphSize one = graph_size_report(build_graph_g(d, place_grid(d, 1.0)));
  EXPECT_EQ(one.vertices, 4u);
  EXPECT_EQ(one.edges, 4u);
  GraphSize half = graph_size_report(build_graph_g(d, place_grid(d, 0.5)));
  EXPECT_EQ(half.vertices, 16u);      // 4 x 4 crossings
  EXPECT_EQ(half.edges, 2u * 4u * 3u);  // 3 steps along each of 8 lines
}

TEST(BuildGraphG, EdgesArePureAgainstCurveDistance) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    rf_test::Instance in = rf_test::random_instance(rng, 1 + trial % 2, 1 + (trial / 2) % 2, false);
    DeformedDiagram d = build_diagram(in.t1, in.t2, Leash(in.eps), Metric::L2);
    MonotoneGraph g = build_graph_g(d, place_grid(d, 0.5));
    expect_graph_invariants(g, d);
    for (int k = 0; k < 1000; ++k) {
      const GraphEdge& e = g.edges[rng() % g.edges.size()];
      const Point2 p = g.vertices[e.src].pos, q = g.vertices[e.dst].pos;
      int free = 0, total = 0;
      for (int s = 0; s < 8; ++s) {
        Point2 x = p + ((s + 0.5) / 8.0) * (q - p);
        double dist = rf_test::matched_distance(in.t1, in.t2, x);
        if (std::abs(dist - in.eps) < 1e-7) continue;
        free += dist <= in.eps;
        ++total;
      }
      if (total == 0) continue;
      ASSERT_TRUE(free == 0 || free == total) << "mixed edge";
      if (free == total) ASSERT_LE(e.forbidden, 1e-9 * e.l1);
      else ASSERT_GE(e.forbidden, e.l1 * (1.0 - 1e-9));
    }
  }
}

TEST(BuildGraphG, EveryMonotonePathHasFixedLength) {
  std::mt19937_64 rng(34);
  rf_test::Instance in = rf_test::random_instance(rng, 2, 2, false);
  DeformedDiagram d = build_diagram(in.t1, in.t2, Leash(in.eps), Metric::L2);
  MonotoneGraph g = build_graph_g(d, place_grid(d, 0.6));
  std::vector<std::vector<std::size_t>> out(g.vertices.size());
  for (std::size_t k = 0; k < g.edges.size(); ++k) out[g.edges[k].src].push_back(k);
  const double tol = 1e-9 * (d.width() + d.height());
  for (int walk = 0; walk < 300; ++walk) {
    VertexId start = walk == 0 ? g.source : static_cast<VertexId>(rng() % g.vertices.size());
    VertexId v = start;
    double len = 0.0;
    while (!out[v].empty()) {
      const GraphEdge& e = g.edges[out[v][rng() % out[v].size()]];
      len += e.l1;
      v = e.dst;
    }
    Point2 a = g.vertices[start].pos, b = g.vertices[v].pos;
    ASSERT_NEAR(len, (b.x - a.x) + (b.y - a.y), tol);
    if (walk == 0) {
      EXPECT_EQ(v, g.target);
      EXPECT_NEAR(len, in.t1.length() + in.t2.length(), tol);
    }
  }
}

TEST(BuildGraphG, VertexGrowthWhenDeltaHalves) {
  UnsolvableFixture f = unsolvable_fixture();
  DeformedDiagram d = build_diagram(f.t1, f.t2, Leash(1.0), Metric::L2);
  std::size_t prev = 0;
  for (double delta : {0.4, 0.2, 0.1}) {
    std::size_t v = graph_size_report(build_graph_g(d, place_grid(d, delta))).vertices;
    if (prev) EXPECT_LE(static_cast<double>(v), 4.5 * static_cast<double>(prev));
    prev = v;
  }
}

TEST(BuildGraphG, JsonDumpShape) {
  UnsolvableFixture f = unsolvable_fixture();
  DeformedDiagram d = build_diagram(f.t1, f.t2, Leash(1.0), Metric::L2);
  MonotoneGraph g = build_graph_g(d, place_grid(d, 2.0));
  auto doc = nlohmann::json::parse(graph_to_json(g));
  ASSERT_EQ(doc["vertices"].size(), g.vertices.size());
  ASSERT_EQ(doc["edges"].size(), g.edges.size());
  EXPECT_EQ(doc["vertices"][0]["id"], 0);
  EXPECT_TRUE(doc["vertices"][0].contains("x"));
  EXPECT_TRUE(doc["edges"][0].contains("forbidden"));
  EXPECT_TRUE(doc["edges"][0].contains("l1"));
}

TEST(TopologicalOrder, DetectsCycle) {
  MonotoneGraph g;
  g.vertices = {{{0, 0}}, {{1, 0}}};
  g.edges = {{0, 1, 1, 0, 0, 1}, {1, 0, 1, 0, 0, 1}};
  EXPECT_THROW(topological_order(g), std::logic_error);
}
