#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nodal_morse {

/// Undirected edge stored with its canonical orientation u -> v, u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite connected simple graph on vertices 0..num_vertices()-1.
///
/// Edge indices follow the construction order; every edge is stored with the
/// canonical orientation low index -> high index, which is the coordinate
/// basis used for all 1-forms. A breadth-first spanning tree rooted at vertex 0
/// (neighbours visited in increasing index order) fixes the chords, and hence
/// the flux coordinates on the gauge quotient.
class Graph {
 public:
  /// Throws Error(InvalidEdge) or Error(DisconnectedGraph).
  Graph(int num_vertices, const std::vector<std::pair<int, int>>& edge_list);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  /// Cycle dimension 1 + #E - #X.
  int beta() const { return num_edges() - num_vertices_ + 1; }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }

  /// Edge index of {x, y}, or -1.
  int edge_index(int x, int y) const;
  bool adjacent(int x, int y) const { return edge_index(x, y) >= 0; }

  /// Neighbours of x in increasing order.
  const std::vector<int>& neighbors(int x) const { return adjacency_[x]; }
  int degree(int x) const { return static_cast<int>(adjacency_[x].size()); }

  const std::vector<int>& tree_edges() const { return tree_edges_; }
  const std::vector<int>& chords() const { return chords_; }

  /// BFS parent of each vertex (-1 for the root) and the tree edge reaching it.
  const std::vector<int>& tree_parent() const { return parent_; }
  const std::vector<int>& tree_parent_edge() const { return parent_edge_; }
  /// Vertices in BFS discovery order.
  const std::vector<int>& bfs_order() const { return bfs_order_; }

  /// #E x #X matrix of d: row e has -1 at u and +1 at v.
  Eigen::MatrixXd incidence_matrix() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_;
  }

 private:
  int num_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> edge_lookup_;  // parallel to adjacency_
  std::vector<int> tree_edges_;
  std::vector<int> chords_;
  std::vector<int> parent_;
  std::vector<int> parent_edge_;
  std::vector<int> bfs_order_;
};

Graph build_graph(int num_vertices, const std::vector<std::pair<int, int>>& edge_list);

/// Real 1-form, one value per canonically oriented edge.
class OneForm {
 public:
  OneForm() = default;
  explicit OneForm(Eigen::VectorXd values) : values_(std::move(values)) {}
  static OneForm zero(const Graph& g) { return OneForm(Eigen::VectorXd::Zero(g.num_edges())); }

  const Eigen::VectorXd& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  double operator[](int e) const { return values_[e]; }

  /// Value on the oriented edge [x, y]; antisymmetric in (x, y).
  double evaluate(const Graph& g, int x, int y) const;

 private:
  Eigen::VectorXd values_;
};

/// (df)([x,y]) = f(y) - f(x).
OneForm differential(const Graph& g, const Eigen::VectorXd& f);

/// d e_1, ..., d e_{#X-1}: a basis of the gradient 1-forms.
std::vector<OneForm> gradient_subspace_basis(const Graph& g);

/// Same basis as columns of a #E x (#X-1) matrix.
Eigen::MatrixXd gradient_basis_matrix(const Graph& g);

/// #E x beta matrix whose columns are the chord indicator 1-forms.
Eigen::MatrixXd chord_basis_matrix(const Graph& g);

}  // namespace nodal_morse
