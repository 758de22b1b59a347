#include "nodal_morse/nodal.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "nodal_morse/errors.hpp"

namespace nodal_morse {

namespace {

void require_nonvanishing(const Eigen::VectorXd& phi, double vanish_threshold) {
  const double max_abs = phi.size() == 0 ? 0.0 : phi.cwiseAbs().maxCoeff();
  for (Eigen::Index x = 0; x < phi.size(); ++x) {
    if (!(std::abs(phi[x]) >= vanish_threshold * max_abs) || max_abs == 0.0) {
      throw VanishingVertexError(static_cast<int>(x),
                                 "eigenvector vanishes at vertex " + std::to_string(x));
    }
  }
}

bool changes_sign(const Eigen::VectorXd& phi, const Edge& e, int sigma) {
  return sigma * phi[e.u] * phi[e.v] < 0.0;
}

}  // namespace

DisjointSets::DisjointSets(int size) : parent_(size), rank_(size, 0), components_(size) {
  std::iota(parent_.begin(), parent_.end(), 0);
}

int DisjointSets::find(int x) {
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool DisjointSets::unite(int a, int b) {
  a = find(a);
  b = find(b);
  if (a == b) return false;
  if (rank_[a] < rank_[b]) std::swap(a, b);
  parent_[b] = a;
  if (rank_[a] == rank_[b]) ++rank_[a];
  --components_;
  return true;
}

int sign_changes(const SchrodingerOperator& op, const Eigen::VectorXd& phi,
                 const EdgeSignature& signature, double vanish_threshold) {
  const Graph& g = op.graph();
  if (phi.size() != g.num_vertices()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvector length differs from vertex count");
  }
  if (signature && static_cast<int>(signature->size()) != g.num_edges()) {
    throw Error(ErrorCode::DimensionMismatch, "signature length differs from edge count");
  }
  require_nonvanishing(phi, vanish_threshold);
  int nu = 0;
  for (int e = 0; e < g.num_edges(); ++e) {
    const int sigma = signature ? (*signature)[e] : 1;
    if (changes_sign(phi, g.edge(e), sigma)) ++nu;
  }
  return nu;
}

int nodal_domains(const Graph& g, const Eigen::VectorXd& phi, double vanish_threshold) {
  if (phi.size() != g.num_vertices()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvector length differs from vertex count");
  }
  require_nonvanishing(phi, vanish_threshold);
  DisjointSets sets(g.num_vertices());
  for (const Edge& e : g.edges()) {
    if (!changes_sign(phi, e, 1)) sets.unite(e.u, e.v);
  }
  return sets.components();
}

NodalReport nodal_report(const SchrodingerOperator& op, int n, const SpectralOptions& options) {
  const HypothesisReport hyp = check_hypotheses(op, n, options);
  if (!hyp.ok()) {
    throw Error(ErrorCode::HypothesesViolated,
                hyp.simple ? "eigenvector vanishes at vertex " + std::to_string(hyp.vanishing_vertex)
                           : "eigenvalue " + std::to_string(n) + " is not simple");
  }
  NodalReport r;
  r.n = n;
  r.lambda = hyp.lambda;
  r.phi = hyp.phi;
  r.beta = op.graph().beta();
  r.nu = sign_changes(op, hyp.phi, std::nullopt, options.vanish_threshold);
  r.mu = nodal_domains(op.graph(), hyp.phi, options.vanish_threshold);
  r.defect = r.nu - (n - 1);
  r.nu_bounds_ok = n - 1 <= r.nu && r.nu <= n - 1 + r.beta;
  r.mu_bounds_ok = n - r.beta <= r.mu && r.mu <= n;
  return r;
}

}  // namespace nodal_morse
