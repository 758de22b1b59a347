#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nodal_morse/graph.hpp"
#include "nodal_morse/schrodinger.hpp"
#include "nodal_morse/spectral.hpp"

namespace nodal_morse {

struct NodalReport {
  int n = 0;
  double lambda = 0.0;
  int nu = 0;      ///< sign-change edges
  int mu = 0;      ///< nodal domains
  int beta = 0;
  int defect = 0;  ///< nu - (n - 1)
  bool nu_bounds_ok = false;  ///< n-1 <= nu <= n-1+beta
  bool mu_bounds_ok = false;  ///< n-beta <= mu <= n
  Eigen::VectorXd phi;

  bool bounds_ok() const { return nu_bounds_ok && mu_bounds_ok; }
};

/// Edge signature in {-1, +1}; std::nullopt means all +1.
using EdgeSignature = std::optional<std::vector<int>>;

/// Number of edges {x,y} with sigma_xy phi(x) phi(y) < 0. Throws
/// VanishingVertexError when some |phi(x)| < vanish_threshold ||phi||_inf.
int sign_changes(const SchrodingerOperator& op, const Eigen::VectorXd& phi,
                 const EdgeSignature& signature = std::nullopt, double vanish_threshold = 1e-8);

/// Connected components of the graph after deleting the sign-change edges.
int nodal_domains(const Graph& g, const Eigen::VectorXd& phi, double vanish_threshold = 1e-8);

/// Throws Error(HypothesesViolated) unless lambda_n is simple and phi_n nonvanishing.
NodalReport nodal_report(const SchrodingerOperator& op, int n, const SpectralOptions& options = {});

/// Union-find over vertex indices.
class DisjointSets {
 public:
  explicit DisjointSets(int size);
  int find(int x);
  bool unite(int a, int b);
  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  int components_;
};

}  // namespace nodal_morse
