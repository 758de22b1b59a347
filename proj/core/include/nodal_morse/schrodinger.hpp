#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "nodal_morse/graph.hpp"

namespace nodal_morse {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Real symmetric matrix with strictly negative entries on edges, zeros on
/// non-edges and an arbitrary diagonal.
class SchrodingerOperator {
 public:
  /// Validates and symmetrizes. Throws NotInOG, NotSymmetric or DimensionMismatch.
  SchrodingerOperator(Graph graph, const Eigen::MatrixXd& matrix);

  const Graph& graph() const { return graph_; }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  /// V_x = h_xx + sum_{y~x} h_xy.
  const Eigen::VectorXd& potential() const { return potential_; }
  int size() const { return graph_.num_vertices(); }

  double off_diagonal(int e) const { return matrix_(graph_.edge(e).u, graph_.edge(e).v); }

  /// Same operator with diagonal shifted by -shift, so eigenvalue `shift` moves to 0.
  SchrodingerOperator shifted(double shift) const;

 private:
  Graph graph_;
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd potential_;
};

SchrodingerOperator build_operator(const Graph& g, const Eigen::MatrixXd& matrix);

/// Potential vector computed from a matrix and its graph.
Eigen::VectorXd compute_potential(const Graph& g, const Eigen::MatrixXd& matrix);

/// Edge-difference expansion -sum_E h_xy (f(x)-f(y))^2 + sum_x V_x f(x)^2.
double q1(const SchrodingerOperator& op, const Eigen::VectorXd& f);

/// Graph Laplacian: -1 on edges, degree on the diagonal.
SchrodingerOperator laplacian(const Graph& g);

inline constexpr Interval kDefaultWeightRange{-2.0, -0.5};
inline constexpr Interval kDefaultDiagonalRange{-1.0, 1.0};

/// Deterministic pseudo-random element of O_G. Throws InvalidRange unless
/// weight_range lies in (-inf, 0).
SchrodingerOperator random_operator(const Graph& g, std::uint64_t seed,
                                    Interval weight_range = kDefaultWeightRange,
                                    Interval diagonal_range = kDefaultDiagonalRange);

}  // namespace nodal_morse
