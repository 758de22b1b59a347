#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "nodal_morse/campaign.hpp"
#include "nodal_morse/errors.hpp"
#include "nodal_morse/nodal.hpp"
#include "nodal_morse/spectral.hpp"
#include "oracles.hpp"

using namespace nodal_morse;

TEST_SUITE("nodal") {
  TEST_CASE("path Laplacian top eigenvector") {
    const SchrodingerOperator op = fixtures::path3_laplacian();
    const Eigen::Vector3d phi(1, -2, 1);
    CHECK(sign_changes(op, phi) == 2);
    CHECK(nodal_domains(op.graph(), phi) == 3);
    const NodalReport r = nodal_report(op, 3);
    CHECK(r.nu == 2);
    CHECK(r.mu == 3);
    CHECK(r.defect == 0);
    CHECK(r.bounds_ok());
  }

  TEST_CASE("positive vector") {
    const SchrodingerOperator op = random_operator(fixtures::two_triangles(), 1);
    const Eigen::VectorXd phi = Eigen::VectorXd::Constant(5, 0.3);
    CHECK(sign_changes(op, phi) == 0);
    CHECK(nodal_domains(op.graph(), phi) == 1);
  }

  TEST_CASE("edge signature flips the count on marked edges") {
    const SchrodingerOperator op = fixtures::path3_laplacian();
    CHECK(sign_changes(op, Eigen::Vector3d(1, 1, 1), std::vector<int>{-1, 1}) == 1);
    CHECK(sign_changes(op, Eigen::Vector3d(1, -2, 1), std::vector<int>{-1, -1}) == 0);
  }

  TEST_CASE("vanishing entries are reported, not guessed") {
    const SchrodingerOperator op = fixtures::path3_laplacian();
    try {
      sign_changes(op, Eigen::Vector3d(1, 0, -1));
      FAIL("expected VanishingVertexError");
    } catch (const VanishingVertexError& e) {
      CHECK(e.vertex() == 1);
    }
    CHECK_THROWS_AS(nodal_report(op, 2), Error);
  }

  TEST_CASE("triangle: odd cycle forces an even count") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SchrodingerOperator op = random_operator(fixtures::triangle(), seed);
      if (!check_hypotheses(op, 2).ok() || !check_hypotheses(op, 3).ok()) continue;
      const NodalReport second = nodal_report(op, 2);
      CHECK(second.nu == 2);
      CHECK(second.defect == 1);
      const NodalReport third = nodal_report(op, 3);
      CHECK(third.nu == 2);
      CHECK(third.defect == 0);
    }
  }

  TEST_CASE("property: counts match brute force and satisfy the bounds") {
    std::mt19937_64 rng(31);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const SchrodingerOperator op = campaign_instance(rng(), 10, 6);
      const Graph& g = op.graph();
      for (int n = 1; n <= op.size(); ++n) {
        if (!check_hypotheses(op, n).ok()) continue;
        const NodalReport r = nodal_report(op, n);
        CHECK(r.nu == oracle::sign_changes(op.matrix(), r.phi));
        CHECK(r.mu == oracle::nodal_domains(op.matrix(), r.phi));
        CHECK(r.nu_bounds_ok);
        CHECK(r.mu_bounds_ok);
        CHECK(n - 1 <= r.nu);
        CHECK(r.nu <= n - 1 + g.beta());
        CHECK(n - g.beta() <= r.mu);
        CHECK(r.mu <= n);
        CHECK(r.defect >= 0);
        CHECK(r.defect <= g.beta());
        CHECK(r.mu - 1 <= r.nu);
        CHECK(r.mu >= g.num_vertices() - (g.num_edges() - r.nu));
        ++checked;
      }
    }
    CHECK(checked > 1000);
  }
}
