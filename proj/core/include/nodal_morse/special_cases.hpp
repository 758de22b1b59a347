#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nodal_morse/magnetic.hpp"
#include "nodal_morse/schrodinger.hpp"

namespace nodal_morse {

/// Eigenvector phi_n vanishing at exactly one vertex x0.
struct VanishingReport {
  int n = 0;
  double lambda = 0.0;
  int x0 = -1;
  int n_plus = 0;   ///< neighbours y ~ x0 with phi(y) > 0
  int n_minus = 0;  ///< neighbours y ~ x0 with phi(y) < 0
  int nullity_bound = 0;  ///< |n_plus - n_minus|
  int beta = 0;
  Eigen::MatrixXd fd_hessian;  ///< beta x beta, flux coordinates
  MorseIndex fd_morse;
  int fd_nullity = 0;
  Eigen::VectorXd phi;

  bool bound_holds() const { return nullity_bound <= fd_nullity; }
};

/// Throws DegenerateEigenvalue when lambda_n is not simple and
/// NotSingleVanishing unless phi_n vanishes at one vertex whose neighbours
/// are all nonvanishing.
VanishingReport vanishing_analysis(const SchrodingerOperator& op, int n, const FdOptions& options = {});

/// Operator with a prescribed eigenvector vanishing only at x0, at eigenvalue 0.
struct VanishingInstance {
  SchrodingerOperator op;
  int n = 0;       ///< position of the eigenvalue 0 in the spectrum
  int x0 = -1;
  bool simple = false;
  Eigen::VectorXd phi;
};

/// phi(x0) = 0 with random nonzero values elsewhere (both signs among the
/// neighbours of x0), random edge weights, the diagonal fixed by H phi = 0
/// away from x0 and one weight at x0 fixed by (H phi)(x0) = 0. Returns
/// std::nullopt when x0 has fewer than two neighbours or no admissible draw
/// is found.
std::optional<VanishingInstance> random_vanishing_instance(const Graph& g, int x0, std::uint64_t seed);

struct BipartiteReport {
  std::vector<int> side;  ///< 0 for Y (U = -1), 1 for Z (U = +1)
  bool conjugate_in_og = false;  ///< -U H U lies in O_G
  double max_spectral_mismatch = 0.0;  ///< over random B: |spec(H_B) + reversed spec(H'_B)|_inf
  double max_top_mismatch = 0.0;       ///< over random B: |lambda_top(H_B) + lambda_1(H'_B)|
  int beta = 0;
  FdHessian top_hessian;  ///< Hessian of B -> lambda_|V|(H_B) at B = 1
  MorseIndex top_morse;
  int sign_changes = 0;   ///< of U phi_1', phi_1' the ground state of H'
  int num_vertices = 0;
  int num_edges = 0;

  bool euler_ok() const { return num_vertices - 1 + beta == num_edges; }
  bool ok(double tolerance = 1e-10) const {
    return conjugate_in_og && max_spectral_mismatch <= tolerance && max_top_mismatch <= tolerance &&
           top_morse.index == beta && sign_changes == num_edges && euler_ok();
  }
};

/// 2-colours the graph (NotBipartite on an odd cycle) and checks the
/// involution identities with `random_fields` random magnetic fields.
BipartiteReport bipartite_check(const SchrodingerOperator& op, std::uint64_t seed = 0, int random_fields = 5,
                                const FdOptions& options = {});

struct DeterminantReport {
  int n = 0;
  double lambda = 0.0;
  double cofactor = 0.0;  ///< product of lambda_j - lambda_n over j != n
  bool sign_ok = false;   ///< (-1)^(n-1) cofactor > 0
  FdHessian lambda_hessian;
  FdHessian determinant_hessian;  ///< of (-1)^(n-1) det(H_theta - lambda_n)
  MorseIndex lambda_morse;
  MorseIndex determinant_morse;   ///< of determinant_hessian / |cofactor|

  bool indices_agree() const {
    return lambda_morse.index == determinant_morse.index && lambda_morse.nullity == determinant_morse.nullity;
  }
  bool ok() const { return sign_ok && indices_agree(); }
};

/// Shifts lambda_n to 0 and compares the flux Hessians of Lambda_n and of the
/// signed determinant. Throws HypothesesViolated.
DeterminantReport determinant_index_check(const SchrodingerOperator& op, int n, const FdOptions& options = {});

/// det(H_theta) as the product of its eigenvalues.
double magnetic_determinant(const SchrodingerOperator& op, const FluxCoordinates& theta);

}  // namespace nodal_morse
