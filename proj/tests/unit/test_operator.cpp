#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "nodal_morse/errors.hpp"
#include "nodal_morse/schrodinger.hpp"

using namespace nodal_morse;

TEST_SUITE("operator") {
  TEST_CASE("Laplacian has zero potential") {
    const SchrodingerOperator op = fixtures::path3_laplacian();
    CHECK(op.potential().isZero());
    CHECK(op.matrix()(1, 1) == 2.0);
  }

  TEST_CASE("sign pattern is enforced") {
    Eigen::Matrix3d m = -Eigen::Matrix3d::Ones();
    m(0, 1) = m(1, 0) = 1.0;
    CHECK_THROWS_AS(SchrodingerOperator(fixtures::triangle(), m), Error);
    try {
      SchrodingerOperator(fixtures::triangle(), m);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotInOG);
    }
    Eigen::Matrix3d off_edge = Eigen::Matrix3d::Zero();
    off_edge(0, 1) = off_edge(1, 0) = off_edge(1, 2) = off_edge(2, 1) = -1.0;
    off_edge(0, 2) = off_edge(2, 0) = -0.5;
    CHECK_THROWS_AS(SchrodingerOperator(fixtures::path3(), off_edge), Error);
  }

  TEST_CASE("asymmetric input is rejected, rounding noise is symmetrized") {
    Eigen::Matrix3d m = fixtures::path3_laplacian().matrix();
    m(0, 1) = -1.0 + 1e-6;
    CHECK_THROWS_AS(SchrodingerOperator(fixtures::path3(), m), Error);
    m(0, 1) = -1.0 + 1e-14;
    const SchrodingerOperator op(fixtures::path3(), m);
    CHECK(op.matrix()(0, 1) == op.matrix()(1, 0));
  }

  TEST_CASE("dimension mismatch") {
    CHECK_THROWS_AS(SchrodingerOperator(fixtures::path3(), Eigen::Matrix2d::Identity()), Error);
  }

  TEST_CASE("two-triangle operator is admissible") {
    const SchrodingerOperator op = fixtures::two_triangles_operator();
    CHECK(op.off_diagonal(2) == -2.0);  // edge {1,2}
    CHECK(op.potential()[2] == doctest::Approx(-1.0 - 1.0 - 2.0 - 1.0 - 2.0));
  }

  TEST_CASE("q1 on the path Laplacian") {
    const SchrodingerOperator op = fixtures::path3_laplacian();
    CHECK(q1(op, Eigen::Vector3d(1, 1, 1)) == doctest::Approx(0.0));
    CHECK(q1(op, Eigen::Vector3d(1, -2, 1)) == doctest::Approx(18.0));
    CHECK(q1(op, Eigen::Vector3d::Zero()) == 0.0);
  }

  TEST_CASE("random operators are deterministic and admissible") {
    const Graph g = fixtures::triangle();
    const SchrodingerOperator a = random_operator(g, 1);
    const SchrodingerOperator b = random_operator(g, 1);
    CHECK(a.matrix() == b.matrix());
    CHECK(a.matrix() != random_operator(g, 2).matrix());
    for (int e = 0; e < g.num_edges(); ++e) CHECK(a.off_diagonal(e) < 0.0);
    CHECK_NOTHROW(SchrodingerOperator(fixtures::path3(), random_operator(fixtures::path3(), 7).matrix()));
    CHECK_THROWS_AS(random_operator(g, 1, Interval{-1.0, 0.5}), Error);
  }

  TEST_CASE("property: q1 equals the matrix form, potential is recomputable") {
    std::mt19937_64 rng(3);
    const std::vector<Graph> graphs{fixtures::triangle(), fixtures::two_triangles(), fixtures::cycle(6),
                                    fixtures::complete_bipartite(2, 3)};
    for (const Graph& g : graphs) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const SchrodingerOperator op = random_operator(g, seed);
        CHECK(compute_potential(g, op.matrix()) == op.potential());
        for (int k = 0; k < 100; ++k) {
          const Eigen::VectorXd f = Eigen::VectorXd::Random(g.num_vertices());
          const double direct = f.dot(op.matrix() * f);
          CHECK(std::abs(q1(op, f) - direct) <= 1e-10 * (1.0 + std::abs(direct)));
        }
      }
    }
  }
}
