#include <benchmark/benchmark.h>

#include <random>

#include "robust_frechet/oracle.hpp"
#include "robust_frechet/pathsearch.hpp"
#include "robust_frechet/steiner.hpp"

using namespace robust_frechet;

namespace {

PolygonalCurve walk(std::mt19937_64& rng, std::size_t segments) {
  std::normal_distribution<double> step(0.0, 0.4);
  std::vector<Point2> pts{{0.0, 0.0}};
  for (std::size_t k = 0; k < segments; ++k) pts.push_back({pts.back().x + 0.5 + std::abs(step(rng)), pts.back().y + step(rng)});
  return PolygonalCurve(pts);
}

struct Fixture {
  PolygonalCurve a;
  PolygonalCurve b;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    std::mt19937_64 rng(7);
    return Fixture{walk(rng, 24), walk(rng, 20)};
  }();
  return f;
}

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::parallel : Execution::serial; }

void BM_Diagram(benchmark::State& s) {
  const Fixture& f = fixture();
  for (auto _ : s) benchmark::DoNotOptimize(build_diagram(f.a, f.b, Leash(0.6), Metric::L2, mode(s)));
}

void BM_PlaceGrid(benchmark::State& s) {
  const Fixture& f = fixture();
  DeformedDiagram d = build_diagram(f.a, f.b, Leash(0.6), Metric::L2);
  for (auto _ : s) benchmark::DoNotOptimize(place_grid(d, 0.02, mode(s)));
}

void BM_GraphG(benchmark::State& s) {
  const Fixture& f = fixture();
  DeformedDiagram d = build_diagram(f.a, f.b, Leash(0.6), Metric::L2);
  GridLines lines = place_grid(d, 0.1);
  for (auto _ : s) benchmark::DoNotOptimize(build_graph_g(d, lines, mode(s)));
}

void BM_GraphGStar(benchmark::State& s) {
  const Fixture& f = fixture();
  DeformedDiagram d = build_diagram(f.a, f.b, Leash(0.6), Metric::L2);
  GridLines lines = place_grid(d, 0.02);
  for (auto _ : s) benchmark::DoNotOptimize(build_graph_gstar(d, lines, mode(s)));
}

void BM_Oracle(benchmark::State& s) {
  const Fixture& f = fixture();
  for (auto _ : s) benchmark::DoNotOptimize(oracle_minex(f.a, f.b, Leash(0.6), {1024, Metric::L2}, mode(s)));
}

}  // namespace

// Argument 0 runs the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_Diagram)->ArgName("parallel")->Arg(0)->Arg(1);
BENCHMARK(BM_PlaceGrid)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphG)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphGStar)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Oracle)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
