#pragma once

#include <Eigen/Dense>

#include "nodal_morse/graph.hpp"
#include "nodal_morse/magnetic.hpp"
#include "nodal_morse/schrodinger.hpp"

namespace nodal_morse {

/// Diagonal quadratic form Q(w) = sum_E a_e w_e^2 on 1-forms, with
/// a_xy = -h_xy phi(x) phi(y).
///
/// Summing once per unoriented edge equals half the sum over both
/// orientations. The second derivative of Lambda_n along a direction alpha
/// in ker d* is 2 Q(alpha); every Hessian comparison below uses that factor.
class QForm {
 public:
  QForm(Graph graph, Eigen::VectorXd coefficients);

  const Graph& graph() const { return graph_; }
  const Eigen::VectorXd& coefficients() const { return a_; }
  Eigen::MatrixXd gram() const { return a_.asDiagonal(); }
  /// max_e |a_e|
  double scale() const { return a_.size() == 0 ? 0.0 : a_.cwiseAbs().maxCoeff(); }

  double operator()(const Eigen::VectorXd& w) const { return (a_.array() * w.array().square()).sum(); }
  double operator()(const OneForm& w) const { return (*this)(w.values()); }
  double bilinear(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return (a_.array() * u.array() * v.array()).sum();
  }

 private:
  Graph graph_;
  Eigen::VectorXd a_;
};

struct QFormOptions {
  /// Maximum ||H phi|| / ||phi|| accepted as "lambda_n shifted to 0".
  double shift_tolerance = 1e-8;
  double vanish_threshold = 1e-8;
  /// Build Q even when phi vanishes somewhere; edges at such vertices get a_e = 0.
  bool allow_vanishing = false;
};

/// Requires the shifted operator (H phi = 0). Throws NotShifted, VanishingVertexError.
QForm build_qform(const SchrodingerOperator& shifted_op, const Eigen::VectorXd& phi,
                  const QFormOptions& options = {});

/// #X x #E matrix of d*, the adjoint of d for the Euclidean product on
/// functions and Q on 1-forms:
///   (d* w)(x) = sum_{y~x} a_xy w([y,x]),
/// i.e. D^T diag(a) with D the incidence matrix. In the canonical basis the
/// entry (x, e) is +a_e when x is the head v of e = [u,v] and -a_e when x is
/// the tail u.
Eigen::MatrixXd dstar(const QForm& q);

/// Row x: sum_{y~x} h_xy phi(y) gamma([x,y]). Equals d* row x divided by phi(x);
/// its kernel is the condition for d/dt H_{exp(i t gamma)} phi = 0.
Eigen::MatrixXd criticality_matrix(const SchrodingerOperator& op, const Eigen::VectorXd& phi);

struct HodgeSplit {
  Eigen::MatrixXd grad_basis;    ///< #E x (#X-1), columns d e_1 .. d e_{#X-1}
  Eigen::MatrixXd kernel_basis;  ///< #E x beta, orthonormal columns spanning ker d*
  Eigen::MatrixXd dstar_matrix;  ///< #X x #E
};

/// Throws SplitFailure when ker d* has the wrong dimension or meets the
/// gradient space.
HodgeSplit hodge_split(const QForm& q);

/// Default relative index tolerance for restrictions of Q.
inline constexpr double kFormIndexTolerance = 1e-13;

/// Signature of Q restricted to span(basis), counted with tolerance
/// relative * (1 + max|a|). Throws RankDeficientBasis.
MorseIndex index_on_subspace(const QForm& q, const Eigen::MatrixXd& basis,
                             double relative = kFormIndexTolerance);

/// Chord indicators projected onto ker d* along the gradient space:
/// c_j = k_j + d f_j with d* k_j = 0. Throws SplitFailure if d* d is singular
/// modulo constants.
Eigen::MatrixXd project_chords_to_kernel(const QForm& q);

/// 2 K^T diag(a) K with K the projected chords: the analytic Hessian of
/// Lambda_n in flux coordinates.
Eigen::MatrixXd analytic_flux_hessian(const QForm& q);

/// q1(phi * f) (pointwise product).
double tilde_q1(const SchrodingerOperator& op, const Eigen::VectorXd& phi, const Eigen::VectorXd& f);

/// Polarization <H (phi f), phi g>.
double tilde_q1_bilinear(const SchrodingerOperator& op, const Eigen::VectorXd& phi,
                         const Eigen::VectorXd& f, const Eigen::VectorXd& g);

struct HessianComparison {
  int n = 0;
  int beta = 0;
  double lambda = 0.0;
  int nu = 0;
  MorseIndex q_full;     ///< Q on all 1-forms
  MorseIndex q_grad;     ///< Q on the gradient 1-forms
  MorseIndex q_kernel;   ///< Q on ker d*
  Eigen::MatrixXd analytic;  ///< 2 K^T diag(a) K
  Eigen::MatrixXd fd;        ///< Richardson finite-difference Hessian
  MorseIndex fd_morse;
  Eigen::VectorXd fd_gradient;
  double max_abs_discrepancy = 0.0;
  /// max_ij |analytic - fd| / max_ij |analytic| (0 when beta = 0)
  double relative_discrepancy = 0.0;
  bool ill_conditioned = false;
};

/// Full analytic/finite-difference cross-check at eigenvalue index n.
/// Throws HypothesesViolated, SimplicityLost, SplitFailure.
HessianComparison analytic_vs_fd_hessian(const SchrodingerOperator& op, int n,
                                         const FdOptions& options = {});

/// Same, reusing a stencil already sampled for op.
HessianComparison analytic_vs_fd_hessian(const SchrodingerOperator& op, int n,
                                         const FluxStencil& stencil,
                                         const SpectralOptions& spectral = {},
                                         double form_tolerance = kFormIndexTolerance);

}  // namespace nodal_morse
