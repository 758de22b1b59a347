#pragma once

#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "nodal_morse/schrodinger.hpp"

namespace nodal_morse {

/// One eigenpair of a sorted spectrum.
struct Eigenpair {
  int n = 0;        ///< 1-based position in the ascending spectrum
  double value = 0.0;
  Eigen::VectorXcd vector;  ///< unit norm, phase fixed (see fix_phase)
  bool simple = true;
  double gap = std::numeric_limits<double>::infinity();  ///< distance to nearest neighbour
};

struct SpectralOptions {
  /// Simplicity threshold; negative selects 1e-8 * (1 + ||m||).
  double gap_threshold = -1.0;
  /// Relative threshold on |phi(x)| / ||phi||_inf for the nonvanishing test.
  double vanish_threshold = 1e-8;
};

/// Cyclic Jacobi diagonalization. Values ascending; vectors in the columns.
struct SymmetricDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  int sweeps = 0;
};

/// Raw Jacobi solver. Throws NoConvergence after 100 sweeps.
SymmetricDecomposition jacobi_eigensolver(const Eigen::MatrixXd& m, bool compute_vectors = true);

/// Full sorted spectrum of a real symmetric matrix. Throws NotSymmetric, NoConvergence.
std::vector<Eigenpair> eig_symmetric(const Eigen::MatrixXd& m, const SpectralOptions& options = {});

/// Full sorted spectrum of a Hermitian matrix via the real embedding
/// [[Re m, -Im m], [Im m, Re m]]. Throws NotSymmetric (non-Hermitian input),
/// NoConvergence, EmbeddingPairingFailure.
std::vector<Eigenpair> eig_hermitian(const Eigen::MatrixXcd& m, const SpectralOptions& options = {});

/// Eigenvalues only, same embedding route.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m);

/// Rotates v so that its first entry with |v(x)| >= 0.5 ||v||_inf is real positive.
void fix_phase(Eigen::VectorXcd& v);

/// Spectral norm of a Hermitian matrix given its eigenvalues.
double spectral_norm(const Eigen::VectorXd& eigenvalues);

double resolve_gap_threshold(const SpectralOptions& options, double norm);

/// ||m v - lambda v||
double residual(const Eigen::MatrixXcd& m, const Eigenpair& pair);

/// Real part of an eigenvector of a real symmetric matrix.
Eigen::VectorXd real_vector(const Eigenpair& pair);

struct HypothesisReport {
  int n = 0;
  double lambda = 0.0;
  bool simple = false;
  double gap = 0.0;
  bool nonvanishing = false;
  int vanishing_vertex = -1;      ///< first vertex below the threshold, or -1
  double min_abs_ratio = 0.0;     ///< min_x |phi(x)| / ||phi||_inf
  Eigen::VectorXd phi;            ///< phase-fixed real eigenvector

  bool ok() const { return simple && nonvanishing; }
};

/// Simplicity of lambda_n and nonvanishing of phi_n at every vertex.
HypothesisReport check_hypotheses(const SchrodingerOperator& op, int n,
                                  const SpectralOptions& options = {});

}  // namespace nodal_morse
