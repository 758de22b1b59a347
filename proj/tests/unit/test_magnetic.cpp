#include <doctest.h>

#include <complex>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "nodal_morse/errors.hpp"
#include "nodal_morse/magnetic.hpp"
#include "nodal_morse/spectral.hpp"
#include "oracles.hpp"

using namespace nodal_morse;

namespace {

Eigen::VectorXd random_vector(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd v(n);
  for (Eigen::Index k = 0; k < n; ++k) v[k] = u(rng);
  return v;
}

}  // namespace

TEST_SUITE("magnetic") {
  TEST_CASE("trivial field reproduces the operator") {
    const SchrodingerOperator op = random_operator(fixtures::two_triangles(), 3);
    const Eigen::MatrixXcd hb = magnetic_operator(op, MagneticField::trivial(op.graph()));
    CHECK(hb.real() == op.matrix());
    CHECK(hb.imag().isZero(0.0));
  }

  TEST_CASE("field on another graph is rejected") {
    const SchrodingerOperator op = random_operator(fixtures::triangle(), 3);
    CHECK_THROWS_AS(magnetic_operator(op, MagneticField::trivial(fixtures::two_triangles())), Error);
  }

  TEST_CASE("gauge transform is conjugation by diag(exp(i f))") {
    std::mt19937_64 rng(8);
    const SchrodingerOperator op = random_operator(fixtures::two_triangles(), 5);
    const Graph& g = op.graph();
    const MagneticField b(OneForm(random_vector(rng, g.num_edges(), std::numbers::pi)));
    const Eigen::VectorXd f = random_vector(rng, g.num_vertices(), std::numbers::pi);
    Eigen::VectorXcd u(g.num_vertices());
    for (int x = 0; x < g.num_vertices(); ++x) u[x] = std::polar(1.0, f[x]);
    const Eigen::MatrixXcd expected = u.asDiagonal().toDenseMatrix().adjoint() * magnetic_operator(op, b) * u.asDiagonal();
    const Eigen::MatrixXcd got = magnetic_operator(op, gauge_transform(g, b, f));
    CHECK((got - expected).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("four-cycle: Lambda_1 follows the circulant formula") {
    const SchrodingerOperator op = fixtures::cycle_operator(4, 2.0);
    REQUIRE(op.graph().beta() == 1);
    for (double alpha = -3.0; alpha <= 3.0; alpha += 0.25) {
      const FluxCoordinates theta{Eigen::VectorXd::Constant(1, alpha)};
      CHECK(lambda_n(op, 1, theta) == doctest::Approx(2.0 - 2.0 * std::cos(alpha / 4.0)).epsilon(1e-12));
      CHECK((magnetic_spectrum(op, theta) - oracle::cycle_spectrum(4, 2.0, alpha)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("theta = 0 gives the base spectrum") {
    const SchrodingerOperator op = random_operator(fixtures::two_triangles(), 2);
    const FluxCoordinates zero{Eigen::VectorXd::Zero(2)};
    const Eigen::VectorXd base = oracle::spectrum(op.matrix());
    for (int n = 1; n <= 5; ++n) CHECK(lambda_n(op, n, zero) == doctest::Approx(base[n - 1]).epsilon(1e-12));
  }

  TEST_CASE("Morse index of explicit matrices") {
    const MorseIndex a = morse_index_of_matrix(Eigen::Vector3d(1, -2, 3).asDiagonal().toDenseMatrix(), 1e-8);
    CHECK(a.index == 1);
    CHECK(a.nullity == 0);
    const MorseIndex b = morse_index_of_matrix(Eigen::Matrix2d::Zero(), 1e-8);
    CHECK(b.index == 0);
    CHECK(b.nullity == 2);
    const MorseIndex c = morse_index_of_matrix(Eigen::Vector3d(-1, -1, 0).asDiagonal().toDenseMatrix(), 1e-8);
    CHECK(c.index == 2);
    CHECK(c.nullity == 1);
  }

  TEST_CASE("tree: empty gradient and Hessian") {
    const SchrodingerOperator op = random_operator(fixtures::path3(), 1);
    CHECK(fd_gradient(op, 2).size() == 0);
    const FdHessian h = fd_hessian(op, 2);
    CHECK(h.hessian.size() == 0);
    CHECK(h.morse().index == 0);
  }

  TEST_CASE("cycle: curvature of the bottom and top eigenvalues") {
    // Lambda_1 = c - 2 cos(theta / N) and, for even N, Lambda_N = c + 2 cos(theta / N).
    for (int n : {4, 6, 8}) {
      const SchrodingerOperator op = fixtures::cycle_operator(n, 0.3);
      const FdHessian bottom = fd_hessian(op, 1);
      CHECK(bottom.hessian(0, 0) == doctest::Approx(2.0 / (n * n)).epsilon(1e-6));
      const FdHessian top = fd_hessian(op, n);
      CHECK(top.hessian(0, 0) == doctest::Approx(-2.0 / (n * n)).epsilon(1e-6));
      CHECK(top.morse().index == 1);
    }
  }

  TEST_CASE("two-triangle operator at n = 4: critical with a null Hessian") {
    const SchrodingerOperator op = fixtures::two_triangles_operator();
    CHECK(fd_gradient(op, 4).lpNorm<Eigen::Infinity>() <= 1e-7);
    const FdHessian h = fd_hessian(op, 4);
    REQUIRE(h.hessian.rows() == 2);
    CHECK(h.hessian.jacobiSvd().singularValues()[0] <= 1e-5);
    CHECK(h.morse().nullity == 2);
  }

  TEST_CASE("triangle at n = 2: one negative direction") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SchrodingerOperator op = random_operator(fixtures::triangle(), seed);
      if (!check_hypotheses(op, 2).ok()) continue;
      const FdHessian h = fd_hessian(op, 2);
      REQUIRE(h.hessian.rows() == 1);
      CHECK(h.hessian(0, 0) < 0.0);
      CHECK(h.morse().index == 1);
    }
  }

  TEST_CASE("degenerate eigenvalue is refused") {
    try {
      fd_hessian(fixtures::cycle_operator(4, 2.0), 2);
      FAIL("expected SimplicityLost");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::SimplicityLost);
    }
  }

  TEST_CASE("property: gauge invariance, evenness, flux sufficiency") {
    std::mt19937_64 rng(21);
    const std::vector<Graph> graphs{fixtures::triangle(), fixtures::two_triangles(), fixtures::cycle(5),
                                    fixtures::complete_bipartite(2, 3)};
    for (int trial = 0; trial < 50; ++trial) {
      const Graph& g = graphs[trial % graphs.size()];
      const SchrodingerOperator op = random_operator(g, rng());
      const OneForm gamma(random_vector(rng, g.num_edges(), std::numbers::pi));
      const Eigen::VectorXd f = random_vector(rng, g.num_vertices(), 3.0);
      const Eigen::VectorXd base = hermitian_eigenvalues(magnetic_operator(op, MagneticField(gamma)));
      const Eigen::VectorXd gauged = hermitian_eigenvalues(magnetic_operator(op, gauge_transform(g, MagneticField(gamma), f)));
      CHECK((base - gauged).cwiseAbs().maxCoeff() <= 1e-10);

      const GaugeReduction reduced = reduce_to_flux(g, gamma);
      CHECK((magnetic_spectrum(op, reduced.flux) - base).cwiseAbs().maxCoeff() <= 1e-10);
      const OneForm tree_free = gauge_transform(g, MagneticField(gamma), reduced.gauge).alpha();
      for (int e : g.tree_edges()) CHECK(std::abs(std::remainder(tree_free[e], 2.0 * std::numbers::pi)) < 1e-12);

      const FluxCoordinates theta{random_vector(rng, g.beta(), std::numbers::pi)};
      const FluxCoordinates minus{-theta.theta};
      CHECK((magnetic_spectrum(op, theta) - magnetic_spectrum(op, minus)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }

  TEST_CASE("property: FD Hessian is symmetric and its integers are step-stable") {
    std::mt19937_64 rng(22);
    const std::vector<Graph> graphs{fixtures::triangle(), fixtures::two_triangles(), fixtures::cycle(5)};
    int compared = 0;
    for (int trial = 0; trial < 30; ++trial) {
      const SchrodingerOperator op = random_operator(graphs[trial % graphs.size()], rng());
      for (int n = 1; n <= op.size(); ++n) {
        if (!check_hypotheses(op, n).ok()) continue;
        FdOptions coarse;
        coarse.step = 1e-2;
        FdOptions fine;
        fine.step = 1e-3;
        const FdHessian a = fd_hessian(op, n, coarse);
        const FdHessian b = fd_hessian(op, n, fine);
        CHECK(a.hessian == a.hessian.transpose());
        CHECK(a.morse().index == b.morse().index);
        CHECK(a.morse().nullity == b.morse().nullity);
        CHECK(fd_gradient(op, n).lpNorm<Eigen::Infinity>() <= 1e-7);
        ++compared;
      }
    }
    CHECK(compared > 50);
  }
}
