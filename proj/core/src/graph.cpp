#include "nodal_morse/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "nodal_morse/errors.hpp"

namespace nodal_morse {

Graph::Graph(int num_vertices, const std::vector<std::pair<int, int>>& edge_list)
    : num_vertices_(num_vertices) {
  if (num_vertices < 1) {
    throw Error(ErrorCode::InvalidEdge, "graph needs at least one vertex");
  }
  adjacency_.resize(num_vertices);
  edge_lookup_.resize(num_vertices);
  edges_.reserve(edge_list.size());
  for (const auto& [a, b] : edge_list) {
    const std::string label = "{" + std::to_string(a) + "," + std::to_string(b) + "}";
    if (a < 0 || b < 0 || a >= num_vertices || b >= num_vertices) {
      throw Error(ErrorCode::InvalidEdge, "vertex index out of range in edge " + label);
    }
    if (a == b) throw Error(ErrorCode::InvalidEdge, "self-loop " + label);
    Edge e{std::min(a, b), std::max(a, b)};
    if (edge_index(e.u, e.v) >= 0) throw Error(ErrorCode::InvalidEdge, "duplicate edge " + label);
    const int index = static_cast<int>(edges_.size());
    edges_.push_back(e);
    adjacency_[e.u].push_back(e.v);
    edge_lookup_[e.u].push_back(index);
    adjacency_[e.v].push_back(e.u);
    edge_lookup_[e.v].push_back(index);
  }
  // Keep neighbour lists sorted so BFS order is a function of indices only.
  for (int x = 0; x < num_vertices; ++x) {
    std::vector<std::pair<int, int>> zipped;
    for (std::size_t k = 0; k < adjacency_[x].size(); ++k) {
      zipped.emplace_back(adjacency_[x][k], edge_lookup_[x][k]);
    }
    std::sort(zipped.begin(), zipped.end());
    for (std::size_t k = 0; k < zipped.size(); ++k) {
      adjacency_[x][k] = zipped[k].first;
      edge_lookup_[x][k] = zipped[k].second;
    }
  }

  parent_.assign(num_vertices, -1);
  parent_edge_.assign(num_vertices, -1);
  std::vector<bool> seen(num_vertices, false);
  std::vector<bool> in_tree(edges_.size(), false);
  std::queue<int> queue;
  queue.push(0);
  seen[0] = true;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop();
    bfs_order_.push_back(x);
    for (std::size_t k = 0; k < adjacency_[x].size(); ++k) {
      const int y = adjacency_[x][k];
      if (seen[y]) continue;
      seen[y] = true;
      parent_[y] = x;
      parent_edge_[y] = edge_lookup_[x][k];
      in_tree[edge_lookup_[x][k]] = true;
      queue.push(y);
    }
  }
  if (static_cast<int>(bfs_order_.size()) != num_vertices) {
    throw Error(ErrorCode::DisconnectedGraph,
                "only " + std::to_string(bfs_order_.size()) + " of " +
                    std::to_string(num_vertices) + " vertices reachable from vertex 0");
  }
  for (int e = 0; e < num_edges(); ++e) {
    (in_tree[e] ? tree_edges_ : chords_).push_back(e);
  }
}

int Graph::edge_index(int x, int y) const {
  if (x < 0 || x >= num_vertices_) return -1;
  const auto& nbrs = adjacency_[x];
  for (std::size_t k = 0; k < nbrs.size(); ++k) {
    if (nbrs[k] == y) return edge_lookup_[x][k];
  }
  return -1;
}

Eigen::MatrixXd Graph::incidence_matrix() const {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(num_edges(), num_vertices_);
  for (int e = 0; e < num_edges(); ++e) {
    d(e, edges_[e].u) = -1.0;
    d(e, edges_[e].v) = 1.0;
  }
  return d;
}

Graph build_graph(int num_vertices, const std::vector<std::pair<int, int>>& edge_list) {
  return Graph(num_vertices, edge_list);
}

double OneForm::evaluate(const Graph& g, int x, int y) const {
  const int e = g.edge_index(x, y);
  if (e < 0) throw Error(ErrorCode::InvalidEdge, "no edge between the given vertices");
  return g.edge(e).u == x ? values_[e] : -values_[e];
}

OneForm differential(const Graph& g, const Eigen::VectorXd& f) {
  if (f.size() != g.num_vertices()) {
    throw Error(ErrorCode::DimensionMismatch, "function length differs from vertex count");
  }
  Eigen::VectorXd out(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) out[e] = f[g.edge(e).v] - f[g.edge(e).u];
  return OneForm(std::move(out));
}

std::vector<OneForm> gradient_subspace_basis(const Graph& g) {
  std::vector<OneForm> basis;
  basis.reserve(g.num_vertices() - 1);
  for (int x = 1; x < g.num_vertices(); ++x) {
    basis.push_back(differential(g, Eigen::VectorXd::Unit(g.num_vertices(), x)));
  }
  return basis;
}

Eigen::MatrixXd gradient_basis_matrix(const Graph& g) {
  return g.incidence_matrix().rightCols(g.num_vertices() - 1);
}

Eigen::MatrixXd chord_basis_matrix(const Graph& g) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(g.num_edges(), g.beta());
  for (int j = 0; j < g.beta(); ++j) c(g.chords()[j], j) = 1.0;
  return c;
}

}  // namespace nodal_morse
