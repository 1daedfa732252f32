#ifndef ROBUST_FRECHET_TESTS_SUPPORT_HPP
#define ROBUST_FRECHET_TESTS_SUPPORT_HPP

// Test-side oracles. None of these use the library's free-space formulas:
// distances are evaluated on the curves themselves.

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <vector>

#include "robust_frechet/curves.hpp"
#include "robust_frechet/grid_graph.hpp"

namespace rf_test {

using robust_frechet::Point2;
using robust_frechet::PolygonalCurve;

inline PolygonalCurve random_curve(std::mt19937_64& rng, std::size_t segments, double box = 2.0) {
  std::uniform_real_distribution<double> u(0.0, box);
  std::vector<Point2> pts;
  for (std::size_t k = 0; k <= segments; ++k) pts.push_back({u(rng), u(rng)});
  return PolygonalCurve(pts);
}

struct Instance {
  PolygonalCurve t1;
  PolygonalCurve t2;
  double eps;
};

// Pairs of small curves with a leash that leaves a mix of free and
// forbidden space. With `near_ends` the endpoints of T2 sit within eps of
// those of T1.
inline Instance random_instance(std::mt19937_64& rng, std::size_t n1, std::size_t n2, bool near_ends) {
  std::uniform_real_distribution<double> eps_dist(0.3, 0.9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double eps = eps_dist(rng);
  PolygonalCurve t1 = random_curve(rng, n1);
  PolygonalCurve base = random_curve(rng, n2);
  std::vector<Point2> v(base.vertices().begin(), base.vertices().end());
  if (near_ends) {
    auto jitter = [&](Point2 p) {
      double r = 0.8 * eps * u(rng), a = 6.283185307179586 * u(rng);
      return Point2{p.x + r * std::cos(a), p.y + r * std::sin(a)};
    };
    v.front() = jitter(t1.front());
    v.back() = jitter(t1.back());
  }
  return {t1, PolygonalCurve(v), eps};
}

inline double matched_distance(const PolygonalCurve& a, const PolygonalCurve& b, Point2 p) {
  return robust_frechet::euclidean_distance(a.at_arclength(p.x), b.at_arclength(p.y));
}

inline double matched_l1_distance(const PolygonalCurve& a, const PolygonalCurve& b, Point2 p) {
  return robust_frechet::l1_distance(a.at_arclength(p.x), b.at_arclength(p.y));
}

// Single-source shortest distances with nonnegative weights given per edge.
using Adjacency = std::vector<std::vector<std::pair<std::size_t, double>>>;

inline std::vector<double> dijkstra(const Adjacency& adj, std::size_t src) {
  const std::size_t n = adj.size();
  std::vector<double> dist(n, INFINITY);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, u] = pq.top();
    pq.pop();
    if (d > dist[u]) continue;
    for (auto [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        pq.push({dist[v], v});
      }
    }
  }
  return dist;
}

// Minimum forbidden weight from source to target by Dijkstra (independent
// of the library's topological relaxation).
inline double dijkstra_forbidden(const robust_frechet::MonotoneGraph& g) {
  Adjacency adj(g.vertices.size());
  for (const auto& e : g.edges) adj[e.src].push_back({e.dst, e.forbidden});
  return dijkstra(adj, g.source)[g.target];
}

// Whether a monotone path through free space exists, searched on a lattice
// that includes the cell boundaries. Lattice moves stay inside one cell, so
// a lattice path is a certificate for a real one.
inline bool lattice_decision(const PolygonalCurve& a, const PolygonalCurve& b, double eps, int resolution) {
  auto axis = [&](const PolygonalCurve& c) {
    std::vector<double> v(c.cumulative_lengths().begin(), c.cumulative_lengths().end());
    for (int k = 0; k <= resolution; ++k) v.push_back(c.length() * k / resolution);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  const std::vector<double> xs = axis(a), ys = axis(b);
  const double slack = eps * (1.0 + 1e-12);
  std::vector<char> reach(xs.size() * ys.size(), 0);
  auto at = [&](std::size_t i, std::size_t j) -> char& { return reach[i * ys.size() + j]; };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (matched_distance(a, b, {xs[i], ys[j]}) > slack) continue;
      if (i == 0 && j == 0) at(i, j) = 1;
      else if ((i > 0 && at(i - 1, j)) || (j > 0 && at(i, j - 1)) || (i > 0 && j > 0 && at(i - 1, j - 1))) at(i, j) = 1;
    }
  }
  return at(xs.size() - 1, ys.size() - 1) != 0;
}

}  // namespace rf_test

#endif  // ROBUST_FRECHET_TESTS_SUPPORT_HPP
