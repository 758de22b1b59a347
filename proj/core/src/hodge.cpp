#include "nodal_morse/hodge.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "nodal_morse/errors.hpp"
#include "nodal_morse/linalg.hpp"
#include "nodal_morse/nodal.hpp"
#include "nodal_morse/spectral.hpp"

namespace nodal_morse {

QForm::QForm(Graph graph, Eigen::VectorXd coefficients)
    : graph_(std::move(graph)), a_(std::move(coefficients)) {
  if (a_.size() != graph_.num_edges()) {
    throw Error(ErrorCode::DimensionMismatch, "one coefficient per edge required");
  }
}

QForm build_qform(const SchrodingerOperator& shifted_op, const Eigen::VectorXd& phi,
                  const QFormOptions& options) {
  const Graph& g = shifted_op.graph();
  if (phi.size() != g.num_vertices()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvector length differs from vertex count");
  }
  const double norm = phi.norm();
  const double defect = (shifted_op.matrix() * phi).norm() / norm;
  if (!(defect <= options.shift_tolerance)) {
    throw Error(ErrorCode::NotShifted, "||H phi|| / ||phi|| = " + std::to_string(defect));
  }
  const double max_abs = phi.cwiseAbs().maxCoeff();
  std::vector<bool> vanishing(phi.size(), false);
  for (Eigen::Index x = 0; x < phi.size(); ++x) {
    if (std::abs(phi[x]) >= options.vanish_threshold * max_abs) continue;
    if (!options.allow_vanishing) {
      throw VanishingVertexError(static_cast<int>(x), "eigenvector vanishes at vertex " + std::to_string(x));
    }
    vanishing[x] = true;
  }
  // Edges at a vanishing vertex get an exact zero, not rounding noise.
  Eigen::VectorXd a(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    a[e] = vanishing[u] || vanishing[v] ? 0.0 : -shifted_op.off_diagonal(e) * phi[u] * phi[v];
  }
  return QForm(g, std::move(a));
}

Eigen::MatrixXd dstar(const QForm& q) {
  return q.graph().incidence_matrix().transpose() * q.coefficients().asDiagonal();
}

Eigen::MatrixXd criticality_matrix(const SchrodingerOperator& op, const Eigen::VectorXd& phi) {
  const Graph& g = op.graph();
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(g.num_vertices(), g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const double h = op.off_diagonal(e);
    // gamma([u,v]) = +w_e seen from u, gamma([v,u]) = -w_e seen from v.
    s(edge.u, e) = h * phi[edge.v];
    s(edge.v, e) = -h * phi[edge.u];
  }
  return s;
}

HodgeSplit hodge_split(const QForm& q) {
  const Graph& g = q.graph();
  HodgeSplit split;
  split.dstar_matrix = dstar(q);
  split.grad_basis = gradient_basis_matrix(g);
  // Column equilibration: d* diag(1/|a|) = D^T diag(sign a) has entries in
  // {-1, 0, 1}, so small coefficients cannot fall under the pivot threshold.
  const Eigen::VectorXd& a = q.coefficients();
  if (a.size() > 0 && (a.array() != 0.0).all()) {
    const Eigen::VectorXd inverse = a.cwiseAbs().cwiseInverse();
    const Eigen::MatrixXd cycles = linalg::nullspace(split.dstar_matrix * inverse.asDiagonal());
    split.kernel_basis = linalg::orthonormalize_columns(inverse.asDiagonal() * cycles);
  } else {
    split.kernel_basis = linalg::nullspace(split.dstar_matrix);
  }
  if (split.kernel_basis.cols() != g.beta()) {
    throw Error(ErrorCode::SplitFailure, "ker d* has dimension " + std::to_string(split.kernel_basis.cols()) +
                                             ", expected beta = " + std::to_string(g.beta()));
  }
  Eigen::MatrixXd joint(g.num_edges(), split.grad_basis.cols() + split.kernel_basis.cols());
  joint << split.grad_basis, split.kernel_basis;
  if (g.num_edges() > 0 && linalg::rank(joint) != g.num_edges()) {
    throw Error(ErrorCode::SplitFailure, "gradient 1-forms meet ker d*");
  }
  return split;
}

MorseIndex index_on_subspace(const QForm& q, const Eigen::MatrixXd& basis, double relative) {
  if (basis.rows() != q.graph().num_edges()) {
    throw Error(ErrorCode::DimensionMismatch, "basis vectors must have one entry per edge");
  }
  if (basis.cols() == 0) return {};
  if (linalg::rank(basis) != basis.cols()) {
    throw Error(ErrorCode::RankDeficientBasis, "basis columns are linearly dependent");
  }
  const Eigen::MatrixXd restricted = basis.transpose() * q.coefficients().asDiagonal() * basis;
  return morse_index_of_matrix(restricted, relative * (1.0 + q.scale()));
}

Eigen::MatrixXd project_chords_to_kernel(const QForm& q) {
  const Graph& g = q.graph();
  const Eigen::MatrixXd chords = chord_basis_matrix(g);
  if (g.beta() == 0) return chords;
  // d* d f = d* c, pinned by f(0) = 0. The rows of d* sum to zero, so row 0
  // is redundant and dropped together with the column of vertex 0.
  const Eigen::MatrixXd ds = dstar(q);
  const Eigen::MatrixXd d = g.incidence_matrix();
  const Eigen::MatrixXd laplace = ds * d;
  const Eigen::Index m = g.num_vertices() - 1;
  Eigen::MatrixXd k = chords;
  if (m > 0) {
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(laplace.bottomRightCorner(m, m));
    if (!lu.isInvertible()) {
      throw Error(ErrorCode::SplitFailure, "d* d is singular modulo constants");
    }
    const Eigen::MatrixXd rhs = (ds * chords).bottomRows(m);
    const Eigen::MatrixXd f = lu.solve(rhs);
    k -= d.rightCols(m) * f;
  }
  return k;
}

Eigen::MatrixXd analytic_flux_hessian(const QForm& q) {
  const Eigen::MatrixXd k = project_chords_to_kernel(q);
  Eigen::MatrixXd h = 2.0 * k.transpose() * q.coefficients().asDiagonal() * k;
  return 0.5 * (h + h.transpose());
}

double tilde_q1(const SchrodingerOperator& op, const Eigen::VectorXd& phi, const Eigen::VectorXd& f) {
  if (f.size() != phi.size()) throw Error(ErrorCode::DimensionMismatch, "f and phi differ in length");
  return q1(op, phi.cwiseProduct(f));
}

double tilde_q1_bilinear(const SchrodingerOperator& op, const Eigen::VectorXd& phi,
                         const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  if (f.size() != phi.size() || g.size() != phi.size()) {
    throw Error(ErrorCode::DimensionMismatch, "f, g and phi differ in length");
  }
  return (op.matrix() * phi.cwiseProduct(f)).dot(phi.cwiseProduct(g));
}

HessianComparison analytic_vs_fd_hessian(const SchrodingerOperator& op, int n, const FdOptions& options) {
  const FluxStencil stencil(op, options);
  return analytic_vs_fd_hessian(op, n, stencil, options.spectral);
}

HessianComparison analytic_vs_fd_hessian(const SchrodingerOperator& op, int n,
                                         const FluxStencil& stencil, const SpectralOptions& spectral,
                                         double form_tolerance) {
  const NodalReport nodal = nodal_report(op, n, spectral);
  const SchrodingerOperator shifted = op.shifted(nodal.lambda);
  const QForm q = build_qform(shifted, nodal.phi.normalized(), {.vanish_threshold = spectral.vanish_threshold});
  const HodgeSplit split = hodge_split(q);

  HessianComparison c;
  c.n = n;
  c.beta = op.graph().beta();
  c.lambda = nodal.lambda;
  c.nu = nodal.nu;
  c.q_full = index_on_subspace(q, Eigen::MatrixXd::Identity(q.graph().num_edges(), q.graph().num_edges()),
                                form_tolerance);
  c.q_grad = index_on_subspace(q, split.grad_basis, form_tolerance);
  c.q_kernel = index_on_subspace(q, split.kernel_basis, form_tolerance);
  c.analytic = analytic_flux_hessian(q);

  const FdHessian fd = stencil.hessian(n);
  c.fd = fd.hessian;
  c.fd_morse = fd.morse();
  c.fd_gradient = fd.gradient;
  c.ill_conditioned = fd.ill_conditioned;
  if (c.beta > 0) {
    c.max_abs_discrepancy = (c.analytic - c.fd).cwiseAbs().maxCoeff();
    const double scale = c.analytic.cwiseAbs().maxCoeff();
    c.relative_discrepancy = scale > 0.0 ? c.max_abs_discrepancy / scale : c.max_abs_discrepancy;
  }
  return c;
}

}  // namespace nodal_morse
