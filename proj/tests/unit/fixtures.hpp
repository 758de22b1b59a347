#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nodal_morse/graph.hpp"
#include "nodal_morse/schrodinger.hpp"

namespace fixtures {

using nodal_morse::Graph;
using nodal_morse::SchrodingerOperator;

inline Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }
inline Graph triangle() { return Graph(3, {{0, 1}, {1, 2}, {0, 2}}); }
inline Graph cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < n; ++x) edges.emplace_back(x, (x + 1) % n);
  return Graph(n, edges);
}
/// Two triangles sharing vertex 2.
inline Graph two_triangles() { return Graph(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}}); }

inline SchrodingerOperator path3_laplacian() { return nodal_morse::laplacian(path3()); }

/// The two-triangle operator with lambda_4 = 0 vanishing at the shared vertex.
inline SchrodingerOperator two_triangles_operator() {
  Eigen::MatrixXd m(5, 5);
  m << 1, 1, 1, 0, 0,
       1, 1, 2, 0, 0,
       1, 2, 1, 1, 2,
       0, 0, 1, 1, 1,
       0, 0, 2, 1, 1;
  return SchrodingerOperator(two_triangles(), -m);
}

/// Cycle with weight -1 and constant diagonal.
inline SchrodingerOperator cycle_operator(int n, double diagonal) {
  const Graph g = cycle(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : g.edges()) m(e.u, e.v) = m(e.v, e.u) = -1.0;
  m.diagonal().setConstant(diagonal);
  return SchrodingerOperator(g, m);
}

inline Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < a; ++x) {
    for (int y = 0; y < b; ++y) edges.emplace_back(x, a + y);
  }
  return Graph(a + b, edges);
}

}  // namespace fixtures
