#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "robust_frechet/oracle.hpp"
#include "robust_frechet/pathsearch.hpp"
#include "robust_frechet/svg.hpp"

using namespace robust_frechet;
using nlohmann::json;

namespace {

struct CurveArgs {
  std::string curve_a;
  std::string curve_b;
  double epsilon = 0.0;
};

void add_curve_options(CLI::App* cmd, CurveArgs& a) {
  cmd->add_option("--curve-a", a.curve_a, "first curve (text: x y per line, or JSON)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--curve-b", a.curve_b, "second curve")->required()->check(CLI::ExistingFile);
  cmd->add_option("--epsilon", a.epsilon, "leash length")->required()->check(CLI::NonNegativeNumber);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text << '\n';
}

// Writes to the file when one is given, stdout otherwise.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) std::cout << text << '\n';
  else write_text(path, text);
}

const std::map<std::string, Algorithm> kAlgorithms{{"grid", Algorithm::grid}, {"steiner", Algorithm::steiner}};
const std::map<std::string, Metric> kMetrics{{"L2", Metric::L2}, {"L1", Metric::L1}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial curve matching under the Frechet distance"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "run the serial kernels instead of the OpenMP ones");

  // minex / maxin
  CurveArgs solve_args;
  double delta = 0.05;
  Algorithm algorithm = Algorithm::steiner;
  std::string out_path, svg_path, graph_path;
  bool one_minus_delta = false;
  CLI::App* minex = app.add_subcommand("minex", "minimise the unmatched length");
  CLI::App* maxin = app.add_subcommand("maxin", "maximise the matched length");
  for (CLI::App* cmd : {minex, maxin}) {
    add_curve_options(cmd, solve_args);
    cmd->add_option("--delta", delta, "approximation parameter")->check(CLI::PositiveNumber);
    cmd->add_option("--algorithm", algorithm, "grid or steiner")->transform(CLI::CheckedTransformer(kAlgorithms));
    cmd->add_option("--out", out_path, "write the solution JSON here instead of stdout");
    cmd->add_option("--svg", svg_path, "write the diagram with the path as SVG");
    cmd->add_option("--dump-graph", graph_path, "write the searched graph as JSON");
  }
  maxin->add_flag("--one-minus-delta", one_minus_delta, "relative (1 - delta) approximation; delta in (0, 1)");

  CurveArgs decide_args;
  CLI::App* decide = app.add_subcommand("decide", "decide whether the Frechet distance is at most epsilon");
  add_curve_options(decide, decide_args);

  CurveArgs shortcut_args;
  double shortcut_delta = 0.05;
  std::string out_a, out_b;
  CLI::App* shortcut = app.add_subcommand("shortcut", "replace unmatched stretches by straight segments");
  add_curve_options(shortcut, shortcut_args);
  shortcut->add_option("--delta", shortcut_delta, "approximation parameter")->check(CLI::PositiveNumber);
  shortcut->add_option("--out-a", out_a, "shortcut first curve")->required();
  shortcut->add_option("--out-b", out_b, "shortcut second curve")->required();

  CurveArgs oracle_args;
  OracleConfig oracle_cfg;
  CLI::App* oracle = app.add_subcommand("oracle", "brute-force lattice solution of MinEx");
  add_curve_options(oracle, oracle_args);
  oracle->add_option("--resolution", oracle_cfg.resolution, "subdivisions per side")->check(CLI::Range(8, 1 << 20));
  oracle->add_option("--metric", oracle_cfg.metric, "L2 or L1")->transform(CLI::CheckedTransformer(kMetrics));

  CLI::App* repro = app.add_subcommand("repro-unsolvable", "numeric optimum of the three-vertex instance");

  CurveArgs export_args;
  Metric export_metric = Metric::L2;
  std::string export_out;
  CLI::App* export_cmd = app.add_subcommand("export-diagram", "render the free-space diagram as SVG");
  add_curve_options(export_cmd, export_args);
  export_cmd->add_option("--metric", export_metric, "L2 or L1")->transform(CLI::CheckedTransformer(kMetrics));
  export_cmd->add_option("--out", export_out, "SVG file")->required();

  CLI11_PARSE(app, argc, argv);
  const Execution exec = serial ? Execution::serial : Execution::parallel;

  try {
    if (minex->parsed() || maxin->parsed()) {
      const PolygonalCurve a = load_curve(solve_args.curve_a), b = load_curve(solve_args.curve_b);
      const Leash eps(solve_args.epsilon);
      const DeformedDiagram diag(a, b, eps, Metric::L2, exec);
      PathSolution sol;
      json doc;
      if (one_minus_delta) {
        MaxInDeltaResult r = solve_maxin_one_minus_delta(a, b, eps, delta, exec);
        if (r.degraded) std::cerr << "warning: " << r.warning << '\n';
        sol = r.path;
        doc = json::parse(solution_to_json(sol, Algorithm::steiner, delta, eps.epsilon(),
                                           additive_guarantee(a, b, delta)));
        doc["gamma_lb"] = r.gamma_lb;
        doc["steiner_spacing"] = r.steiner_spacing;
        if (!r.degraded) doc["guarantee"] = {{"relative", 1.0 - delta}};
      } else {
        const SolveOptions opts{algorithm, exec};
        MonotoneGraph g = build_solver_graph(diag, delta, opts);
        if (!graph_path.empty()) write_text(graph_path, graph_to_json(g));
        sol = shortest_forbidden_path(g);
        doc = json::parse(solution_to_json(sol, algorithm, delta, eps.epsilon(), additive_guarantee(a, b, delta)));
      }
      emit(out_path, doc.dump(2));
      if (!svg_path.empty()) write_text(svg_path, diagram_to_svg(diag, &sol));
    } else if (decide->parsed()) {
      const PolygonalCurve a = load_curve(decide_args.curve_a), b = load_curve(decide_args.curve_b);
      const bool yes = frechet_decision(a, b, Leash(decide_args.epsilon));
      std::cout << json{{"epsilon", decide_args.epsilon}, {"within", yes}}.dump() << '\n';
    } else if (shortcut->parsed()) {
      const PolygonalCurve a = load_curve(shortcut_args.curve_a), b = load_curve(shortcut_args.curve_b);
      const Leash eps(shortcut_args.epsilon);
      const PathSolution sol = solve_minex(a, b, eps, shortcut_delta, {Algorithm::steiner, exec});
      const ShortcutCurves sc = build_shortcut_curves(a, b, sol, eps);
      save_curve(sc.a, out_a);
      save_curve(sc.b, out_b);
      json runs_a = json::array(), runs_b = json::array();
      for (const Interval& r : sc.replaced_a) runs_a.push_back({r.lo, r.hi});
      for (const Interval& r : sc.replaced_b) runs_b.push_back({r.lo, r.hi});
      std::cout << json{{"quality_B", sol.quality_B},
                        {"replaced_length", sc.replaced_length},
                        {"replaced_a", runs_a},
                        {"replaced_b", runs_b}}
                       .dump(2)
                << '\n';
    } else if (oracle->parsed()) {
      const PolygonalCurve a = load_curve(oracle_args.curve_a), b = load_curve(oracle_args.curve_b);
      const OracleResult r = oracle_minex(a, b, Leash(oracle_args.epsilon), oracle_cfg, exec);
      std::cout << json{{"value", r.value}, {"resolution", r.resolution}, {"error_bound", r.error_bound}}.dump()
                << '\n';
    } else if (repro->parsed()) {
      const Case1Result c1 = reproduce_unsolvable_case1();
      const Case2Result c2 = reproduce_unsolvable_case2();
      json doc{{"h", c2.h},
               {"length", c2.length},
               {"case1", c1.closed_form},
               {"case1_numeric", c1.numeric},
               {"h_range", {c2.h_min, c2.h_max}},
               {"polynomial_residual", c2.polynomial_residual}};
      std::cout << doc.dump(2) << '\n';
    } else if (export_cmd->parsed()) {
      const PolygonalCurve a = load_curve(export_args.curve_a), b = load_curve(export_args.curve_b);
      write_text(export_out, diagram_to_svg(DeformedDiagram(a, b, Leash(export_args.epsilon), export_metric, exec)));
    }
  } catch (const ShortcutError& e) {
    std::cerr << "shortcut: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
