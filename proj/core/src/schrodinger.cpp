#include "nodal_morse/schrodinger.hpp"

#include <cmath>
#include <random>
#include <string>

#include "nodal_morse/errors.hpp"
#include "nodal_morse/linalg.hpp"

namespace nodal_morse {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

std::string pair_label(int x, int y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

}  // namespace

SchrodingerOperator::SchrodingerOperator(Graph graph, const Eigen::MatrixXd& matrix)
    : graph_(std::move(graph)) {
  const int n = graph_.num_vertices();
  if (matrix.rows() != n || matrix.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is " + std::to_string(matrix.rows()) + "x" +
                                                  std::to_string(matrix.cols()) + ", graph has " +
                                                  std::to_string(n) + " vertices");
  }
  const double scale = std::max(1.0, matrix.cwiseAbs().maxCoeff());
  if (linalg::asymmetry(matrix) > kSymmetryTolerance * scale) {
    throw Error(ErrorCode::NotSymmetric, "asymmetry exceeds tolerance");
  }
  matrix_ = 0.5 * (matrix + matrix.transpose());
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      const double h = matrix_(x, y);
      if (graph_.adjacent(x, y)) {
        if (!(h < 0.0)) {
          throw Error(ErrorCode::NotInOG, "edge entry " + pair_label(x, y) + " must be negative");
        }
      } else if (h != 0.0) {
        throw Error(ErrorCode::NotInOG, "non-edge entry " + pair_label(x, y) + " must vanish");
      }
    }
  }
  potential_ = compute_potential(graph_, matrix_);
}

SchrodingerOperator SchrodingerOperator::shifted(double shift) const {
  Eigen::MatrixXd m = matrix_;
  m.diagonal().array() -= shift;
  return SchrodingerOperator(graph_, m);
}

SchrodingerOperator build_operator(const Graph& g, const Eigen::MatrixXd& matrix) {
  return SchrodingerOperator(g, matrix);
}

Eigen::VectorXd compute_potential(const Graph& g, const Eigen::MatrixXd& matrix) {
  Eigen::VectorXd v = matrix.diagonal();
  for (const Edge& e : g.edges()) {
    v[e.u] += matrix(e.u, e.v);
    v[e.v] += matrix(e.v, e.u);
  }
  return v;
}

double q1(const SchrodingerOperator& op, const Eigen::VectorXd& f) {
  const Graph& g = op.graph();
  if (f.size() != g.num_vertices()) {
    throw Error(ErrorCode::DimensionMismatch, "function length differs from vertex count");
  }
  double total = 0.0;
  for (int e = 0; e < g.num_edges(); ++e) {
    const double diff = f[g.edge(e).u] - f[g.edge(e).v];
    total -= op.off_diagonal(e) * diff * diff;
  }
  total += (op.potential().array() * f.array().square()).sum();
  return total;
}

SchrodingerOperator laplacian(const Graph& g) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_vertices());
  for (const Edge& e : g.edges()) {
    m(e.u, e.v) = m(e.v, e.u) = -1.0;
    m(e.u, e.u) += 1.0;
    m(e.v, e.v) += 1.0;
  }
  return SchrodingerOperator(g, m);
}

SchrodingerOperator random_operator(const Graph& g, std::uint64_t seed, Interval weight_range,
                                    Interval diagonal_range) {
  if (!(weight_range.lo <= weight_range.hi) || !(weight_range.hi < 0.0)) {
    throw Error(ErrorCode::InvalidRange, "edge weights must lie in (-inf, 0)");
  }
  if (!(diagonal_range.lo <= diagonal_range.hi)) {
    throw Error(ErrorCode::InvalidRange, "empty diagonal range");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(weight_range.lo, weight_range.hi);
  std::uniform_real_distribution<double> diagonal(diagonal_range.lo, diagonal_range.hi);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_vertices());
  for (const Edge& e : g.edges()) {
    double w = weight(rng);
    // uniform_real_distribution may return hi; keep the edge strictly negative.
    if (!(w < 0.0)) w = weight_range.lo;
    m(e.u, e.v) = m(e.v, e.u) = w;
  }
  for (int x = 0; x < g.num_vertices(); ++x) m(x, x) = diagonal(rng);
  return SchrodingerOperator(g, m);
}

}  // namespace nodal_morse
