#pragma once

#include <functional>

#include <Eigen/Dense>

namespace nodal_morse {

/// C^2 curve t -> A(t) of Hermitian matrices with its derivatives at t = 0.
struct MatrixCurve {
  std::function<Eigen::MatrixXcd(double)> evaluate;
  Eigen::MatrixXcd first_derivative;   ///< A'(0)
  Eigen::MatrixXcd second_derivative;  ///< A''(0)

  Eigen::MatrixXcd at_zero() const { return evaluate(0.0); }

  /// A(t) = a0 + t a1 + t^2/2 a2.
  static MatrixCurve quadratic(Eigen::MatrixXcd a0, Eigen::MatrixXcd a1, Eigen::MatrixXcd a2);
};

struct PerturbationOptions {
  /// Residual tolerance for ||A(0) phi - lambda phi||, relative to 1 + ||A(0)||.
  double eigenvector_tolerance = 1e-8;
  /// |lambda'(0)| above this is NotCritical.
  double critical_tolerance = 1e-8;
  /// Minimum gap / (1 + ||A(0)||) around lambda(0).
  double relative_gap = 1e-6;
};

/// lambda'(0) = <A'(0) phi, phi>. Throws NotEigenvector.
double eigenvalue_first_derivative(const MatrixCurve& curve, const Eigen::VectorXcd& phi0,
                                   const PerturbationOptions& options = {});

/// lambda''(0) = <A''(0) phi, phi> + 2 <phi'(0), A'(0) phi> where phi'(0)
/// solves (A(0) - lambda) phi' = -A'(0) phi orthogonally to phi.
/// Throws NotEigenvector, NotCritical, SolveFailure.
double eigenvalue_second_derivative(const MatrixCurve& curve, const Eigen::VectorXcd& phi0,
                                    const PerturbationOptions& options = {});

/// The derivative phi'(0) with zero component along phi0.
Eigen::VectorXcd eigenvector_derivative(const MatrixCurve& curve, const Eigen::VectorXcd& phi0,
                                        const PerturbationOptions& options = {});

}  // namespace nodal_morse
