#include "nodal_morse/perturbation.hpp"

#include <cmath>
#include <string>

#include "nodal_morse/errors.hpp"
#include "nodal_morse/spectral.hpp"

namespace nodal_morse {

MatrixCurve MatrixCurve::quadratic(Eigen::MatrixXcd a0, Eigen::MatrixXcd a1, Eigen::MatrixXcd a2) {
  MatrixCurve c;
  c.first_derivative = a1;
  c.second_derivative = a2;
  c.evaluate = [a0 = std::move(a0), a1 = std::move(a1), a2 = std::move(a2)](double t) -> Eigen::MatrixXcd {
    return a0 + t * a1 + (0.5 * t * t) * a2;
  };
  return c;
}

namespace {

struct Checked {
  Eigen::MatrixXcd a0;
  Eigen::VectorXcd phi;
  double lambda = 0.0;
  double norm = 0.0;
};

Checked check_eigenvector(const MatrixCurve& curve, const Eigen::VectorXcd& phi0,
                          const PerturbationOptions& options) {
  Checked c;
  c.a0 = curve.at_zero();
  if (c.a0.rows() != phi0.size()) throw Error(ErrorCode::DimensionMismatch, "phi0 length mismatch");
  c.phi = phi0.normalized();
  c.lambda = c.phi.dot(c.a0 * c.phi).real();
  c.norm = c.a0.size() == 0 ? 0.0 : c.a0.operatorNorm();
  const double res = (c.a0 * c.phi - c.lambda * c.phi).norm();
  if (res > options.eigenvector_tolerance * (1.0 + c.norm)) {
    throw Error(ErrorCode::NotEigenvector, "residual " + std::to_string(res));
  }
  return c;
}

// <u, v> with the first slot conjugated.
std::complex<double> inner(const Eigen::VectorXcd& u, const Eigen::VectorXcd& v) { return u.dot(v); }

Eigen::VectorXcd solve_derivative(const Checked& c, const Eigen::VectorXcd& rhs, const PerturbationOptions& options) {
  const std::vector<Eigenpair> spectrum = eig_hermitian(c.a0);
  // Locate lambda(0) and require it to be isolated.
  std::size_t k = 0;
  for (std::size_t j = 1; j < spectrum.size(); ++j) {
    if (std::abs(spectrum[j].value - c.lambda) < std::abs(spectrum[k].value - c.lambda)) k = j;
  }
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    if (j == k) continue;
    if (std::abs(spectrum[j].value - c.lambda) < options.relative_gap * (1.0 + c.norm)) {
      throw Error(ErrorCode::SolveFailure, "lambda(0) is not simple");
    }
  }
  // Pseudo-inverse of A(0) - lambda on the complement of phi.
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(c.phi.size());
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    if (j == k) continue;
    const Eigen::VectorXcd& v = spectrum[j].vector;
    x += v * (inner(v, rhs) / (spectrum[j].value - c.lambda));
  }
  x -= c.phi * inner(c.phi, x);
  return x;
}

}  // namespace

double eigenvalue_first_derivative(const MatrixCurve& curve, const Eigen::VectorXcd& phi0,
                                   const PerturbationOptions& options) {
  const Checked c = check_eigenvector(curve, phi0, options);
  const std::complex<double> value = inner(c.phi, curve.first_derivative * c.phi);
  return value.real();
}

Eigen::VectorXcd eigenvector_derivative(const MatrixCurve& curve, const Eigen::VectorXcd& phi0,
                                        const PerturbationOptions& options) {
  const Checked c = check_eigenvector(curve, phi0, options);
  const Eigen::VectorXcd rhs = -(curve.first_derivative * c.phi);
  if (rhs.norm() <= 1e-14 * (1.0 + c.norm)) return Eigen::VectorXcd::Zero(c.phi.size());
  return solve_derivative(c, rhs, options);
}

double eigenvalue_second_derivative(const MatrixCurve& curve, const Eigen::VectorXcd& phi0,
                                    const PerturbationOptions& options) {
  const Checked c = check_eigenvector(curve, phi0, options);
  const Eigen::VectorXcd a1phi = curve.first_derivative * c.phi;
  const double first = inner(c.phi, a1phi).real();
  if (std::abs(first) > options.critical_tolerance) {
    throw Error(ErrorCode::NotCritical, "lambda'(0) = " + std::to_string(first));
  }
  double value = inner(c.phi, curve.second_derivative * c.phi).real();
  if (a1phi.norm() <= 1e-14 * (1.0 + c.norm)) return value;
  const Eigen::VectorXcd dphi = solve_derivative(c, -a1phi, options);
  value += 2.0 * inner(dphi, a1phi).real();
  return value;
}

}  // namespace nodal_morse
