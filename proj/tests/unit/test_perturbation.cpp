#include <doctest.h>

#include <complex>
#include <random>

#include "fixtures.hpp"
#include "nodal_morse/campaign.hpp"
#include "nodal_morse/errors.hpp"
#include "nodal_morse/hodge.hpp"
#include "nodal_morse/magnetic.hpp"
#include "nodal_morse/perturbation.hpp"
#include "nodal_morse/spectral.hpp"
#include "oracles.hpp"

using namespace nodal_morse;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

Eigen::VectorXcd eigenvector_of(const Eigen::MatrixXcd& m, int k) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(m).eigenvectors().col(k);
}

/// t -> H_{exp(i t alpha)} with its derivatives at 0.
MatrixCurve magnetic_curve(const SchrodingerOperator& op, const Eigen::VectorXd& alpha) {
  const Graph& g = op.graph();
  Eigen::MatrixXcd a1 = Eigen::MatrixXcd::Zero(op.size(), op.size());
  Eigen::MatrixXcd a2 = a1;
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto [u, v] = g.edge(e);
    const double h = op.off_diagonal(e);
    a1(u, v) = std::complex<double>(0.0, h * alpha[e]);
    a1(v, u) = std::conj(a1(u, v));
    a2(u, v) = a2(v, u) = -h * alpha[e] * alpha[e];
  }
  MatrixCurve c;
  c.first_derivative = a1;
  c.second_derivative = a2;
  c.evaluate = [op, alpha](double t) { return magnetic_operator(op, MagneticField(OneForm(t * alpha))); };
  return c;
}

}  // namespace

TEST_SUITE("perturbation") {
  TEST_CASE("two by two example") {
    Eigen::MatrixXcd a0(2, 2), a1(2, 2), a2 = Eigen::MatrixXcd::Zero(2, 2);
    a0 << 0, 0, 0, 1;
    a1 << 0, 1, 1, 0;
    const MatrixCurve c = MatrixCurve::quadratic(a0, a1, a2);
    const Eigen::VectorXcd phi = Eigen::Vector2cd(1, 0);
    CHECK(eigenvalue_first_derivative(c, phi) == doctest::Approx(0.0));
    CHECK(eigenvalue_second_derivative(c, phi) == doctest::Approx(-2.0).epsilon(1e-12));
    // phi' = (0, -1): the lower eigenvector tilts away from the coupling.
    const Eigen::VectorXcd dphi = eigenvector_derivative(c, phi);
    CHECK(std::abs(dphi[0]) < 1e-14);
    CHECK(std::abs(dphi[1] - std::complex<double>(-1.0, 0.0)) < 1e-12);
  }

  TEST_CASE("identity shift and pure second order") {
    std::mt19937_64 rng(3);
    const Eigen::MatrixXcd a0 = oracle::random_hermitian(rng, 5);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(5, 5);
    const Eigen::VectorXcd phi = eigenvector_of(a0, 2);
    CHECK(eigenvalue_first_derivative(MatrixCurve::quadratic(a0, id, 0.0 * id), phi) == doctest::Approx(1.0));
    const MatrixCurve flat = MatrixCurve::quadratic(a0, 0.0 * id, 2.0 * id);
    CHECK(eigenvalue_second_derivative(flat, phi) == doctest::Approx(2.0).epsilon(1e-12));
  }

  TEST_CASE("errors") {
    std::mt19937_64 rng(5);
    const Eigen::MatrixXcd a0 = oracle::random_hermitian(rng, 4);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(4, 4);
    const Eigen::VectorXcd phi = eigenvector_of(a0, 1);
    CHECK(code_of([&] { eigenvalue_second_derivative(MatrixCurve::quadratic(a0, id, id), phi); }) ==
          ErrorCode::NotCritical);
    const Eigen::VectorXcd not_eigen = Eigen::VectorXcd::Ones(4);
    CHECK(code_of([&] { eigenvalue_first_derivative(MatrixCurve::quadratic(a0, id, id), not_eigen); }) ==
          ErrorCode::NotEigenvector);
    // Coupling into a degenerate eigenspace has no finite solution.
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
    swap(0, 1) = swap(1, 0) = 1.0;
    const Eigen::VectorXcd e0 = Eigen::VectorXcd::Unit(4, 0);
    CHECK(code_of([&] { eigenvalue_second_derivative(MatrixCurve::quadratic(id, swap, id), e0); }) ==
          ErrorCode::SolveFailure);
  }

  TEST_CASE("random critical curves against tracked eigenvalues") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
      const int size = 3 + trial % 6;
      const Eigen::MatrixXcd a0 = oracle::random_hermitian(rng, size);
      const int k = static_cast<int>(rng() % size);
      const Eigen::VectorXcd phi = eigenvector_of(a0, k);
      Eigen::MatrixXcd a1 = oracle::random_hermitian(rng, size);
      a1 -= phi.dot(a1 * phi).real() * Eigen::MatrixXcd::Identity(size, size);
      const Eigen::MatrixXcd a2 = oracle::random_hermitian(rng, size);
      const MatrixCurve c = MatrixCurve::quadratic(a0, a1, a2);
      CHECK(std::abs(eigenvalue_first_derivative(c, phi)) < 1e-12);
      const double analytic = eigenvalue_second_derivative(c, phi);
      const double reference = oracle::tracked_second_derivative(a0, a1, a2, k, 1e-3);
      CHECK(std::abs(analytic - reference) <= 1e-5 * std::max(1.0, std::abs(reference)));
      // (A - lambda) phi' = -(A' - lambda') phi with phi' orthogonal to phi.
      const Eigen::VectorXcd dphi = eigenvector_derivative(c, phi);
      const double lambda = phi.dot(a0 * phi).real();
      CHECK(std::abs(phi.dot(dphi)) < 1e-12);
      CHECK(((a0 - lambda * Eigen::MatrixXcd::Identity(size, size)) * dphi + a1 * phi).norm() < 1e-9);
    }
  }

  TEST_CASE("magnetic curve along ker d* is critical with second derivative 2Q") {
    std::mt19937_64 rng(8);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      const SchrodingerOperator op = campaign_instance(rng(), 8, 4);
      if (op.graph().beta() == 0) continue;
      for (int n = 1; n <= op.size(); ++n) {
        const HypothesisReport hyp = check_hypotheses(op, n);
        if (!hyp.ok()) continue;
        const QForm q = build_qform(op.shifted(hyp.lambda), hyp.phi);
        const HodgeSplit split = hodge_split(q);
        const Eigen::VectorXd alpha = split.kernel_basis * Eigen::VectorXd::Random(split.kernel_basis.cols());
        const MatrixCurve c = magnetic_curve(op, alpha);
        const Eigen::VectorXcd phi = hyp.phi.cast<std::complex<double>>();
        CHECK((c.first_derivative * phi).norm() <= 1e-10 * (1.0 + op.matrix().norm()));
        const double analytic = eigenvalue_second_derivative(c, phi);
        CHECK(std::abs(analytic - 2.0 * q(alpha)) <= 1e-9 * (1.0 + std::abs(analytic)));
        ++checked;
      }
    }
    CHECK(checked > 20);
  }
}
