#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nodal_morse/errors.hpp"
#include "nodal_morse/hill.hpp"
#include "oracles.hpp"

using namespace nodal_morse;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

double free_error(int steps, double lambda) {
  return std::abs(discriminant(parse_potential("zero", steps), lambda) - oracle::free_discriminant(lambda));
}

}  // namespace

TEST_SUITE("hill") {
  TEST_CASE("free discriminant") {
    const HillOperator h = parse_potential("zero");
    for (double lambda = -5.0; lambda <= 100.0; lambda += 0.37) {
      CHECK(std::abs(discriminant(h, lambda) - oracle::free_discriminant(lambda)) <= 1e-7);
    }
  }

  TEST_CASE("RK4 converges at fourth order") {
    const double ratio = free_error(64, 50.0) / free_error(128, 50.0);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
  }

  TEST_CASE("monodromy has unit determinant") {
    const HillOperator h = parse_potential("fourier:1.5,0.5,-0.7,0.2");
    for (double lambda = -3.0; lambda <= 200.0; lambda += 7.3) {
      CHECK(std::abs(monodromy(h, lambda).determinant() - 1.0) <= 1e-8);
    }
  }

  TEST_CASE("constant potential shifts the free discriminant") {
    const HillOperator h = parse_potential("const:5");
    for (double lambda = 0.0; lambda <= 80.0; lambda += 1.1) {
      CHECK(std::abs(discriminant(h, lambda) - oracle::free_discriminant(lambda - 5.0)) <= 1e-7);
    }
  }

  TEST_CASE("parsing") {
    CHECK(parse_potential("cos:2").potential(0.0) == doctest::Approx(2.0));
    CHECK(parse_potential("cos:2").potential(0.5) == doctest::Approx(-2.0));
    CHECK(parse_potential("fourier:0,1").potential(0.25) == doctest::Approx(1.0));
    CHECK(parse_potential("const:-1.5").potential(0.3) == doctest::Approx(-1.5));
    for (const char* bad : {"cos:x", "bogus", "const:", "fourier:1,", "fourier:", "cos:1e999"}) {
      CAPTURE(bad);
      CHECK(code_of([&] { parse_potential(bad); }) == ErrorCode::ParseError);
    }
  }

  TEST_CASE("evenness detection and the half-period factorization") {
    CHECK(parse_potential("cos:1").even());
    CHECK(parse_potential("zero").even());
    CHECK_FALSE(parse_potential("fourier:1,0.5").even());
    CHECK_FALSE(parse_potential("cos:1", 33).even());
    CHECK(code_of([&] { half_period(parse_potential("cos:1", 33), 1.0); }) == ErrorCode::InvalidRange);

    const HillOperator h = parse_potential("fourier:1,0,-0.4,0");
    for (double lambda = -1.0; lambda <= 120.0; lambda += 3.7) {
      const HalfPeriodValues v = half_period(h, lambda);
      const double delta = discriminant(h, lambda);
      CHECK(std::abs(4.0 * v.d1 * v.y2 - (delta - 2.0)) <= 1e-9 * (1.0 + std::abs(delta)));
      CHECK(std::abs(4.0 * v.y1 * v.d2 - (delta + 2.0)) <= 1e-9 * (1.0 + std::abs(delta)));
      CHECK(std::abs(v.y1 * v.d2 - v.y2 * v.d1 - 1.0) <= 1e-10);
    }
  }

  TEST_CASE("free band edges") {
    const BandStructure bands = band_edges(parse_potential("zero"), 5.0 * 5.0 * kPi * kPi + 1.0, 4);
    REQUIRE(bands.complete_bands() >= 4);
    const Band b1 = *bands.band(1);
    CHECK(std::abs(b1.lower.lambda) < 1e-9);
    CHECK(b1.lower.kind == EdgeKind::Periodic);
    CHECK(b1.lower.simple);
    for (int k = 1; k <= 3; ++k) {
      // Bands k and k+1 touch at a double root k^2 pi^2.
      const Band lo = *bands.band(k);
      const Band hi = *bands.band(k + 1);
      CHECK(lo.upper.lambda == doctest::Approx(k * k * kPi * kPi).epsilon(1e-9));
      CHECK(hi.lower.lambda == doctest::Approx(k * k * kPi * kPi).epsilon(1e-9));
      CHECK_FALSE(lo.upper.simple);
      CHECK(lo.upper.kind == (k % 2 ? EdgeKind::Antiperiodic : EdgeKind::Periodic));
    }
    CHECK(code_of([&] { hessian_identity_check(parse_potential("zero"), 2); }) == ErrorCode::DegenerateEdge);
  }

  TEST_CASE("free Floquet eigenvalues") {
    const HillOperator h = parse_potential("zero");
    const BandStructure bands = band_edges_through(h, 3);
    for (double alpha = 0.0; alpha <= kPi; alpha += kPi / 16.0) {
      CHECK(std::abs(floquet_eigenvalue(h, bands, 1, alpha) - alpha * alpha) <= 1e-6);
      CHECK(std::abs(floquet_eigenvalue(h, bands, 2, alpha) - std::pow(2.0 * kPi - alpha, 2)) <= 1e-6);
    }
  }

  TEST_CASE("Mathieu edges against a Fourier truncation") {
    const HillOperator h = parse_potential("cos:1");
    const BandStructure bands = band_edges_through(h, 6);
    const oracle::FourierEdges ref = oracle::mathieu_edges(1.0);
    std::size_t periodic = 0;
    std::size_t antiperiodic = 0;
    for (int n = 1; n <= 6; ++n) {
      const Band b = *bands.band(n);
      for (const BandEdge* e : {&b.lower, &b.upper}) {
        const double expected =
            e->kind == EdgeKind::Periodic ? ref.periodic[periodic++] : ref.antiperiodic[antiperiodic++];
        CHECK(std::abs(e->lambda - expected) <= 1e-8 * (1.0 + std::abs(expected)));
      }
    }
  }

  TEST_CASE("interlacing and Floquet branches") {
    const HillOperator h = parse_potential("fourier:2,0.5,-1,0.3");
    const BandStructure bands = band_edges_through(h, 5);
    const std::vector<BandEdge>& edges = bands.edges;
    for (std::size_t k = 1; k < edges.size(); ++k) CHECK(edges[k - 1].lambda <= edges[k].lambda);
    for (int n = 1; n <= 5; ++n) {
      const Band b = *bands.band(n);
      const EdgeKind bottom = n % 2 ? EdgeKind::Periodic : EdgeKind::Antiperiodic;
      CHECK(b.lower.kind == bottom);
      CHECK(b.upper.kind != bottom);
      CHECK(b.lower.lambda < b.upper.lambda);
      if (n > 1) CHECK(bands.band(n - 1)->upper.lambda <= b.lower.lambda);

      // Lambda_n is even, maps [0, pi] onto band n and starts at the periodic edge.
      double previous = floquet_eigenvalue(h, bands, n, 0.0);
      CHECK(std::abs(previous - b.periodic().lambda) <= 1e-8 * (1.0 + std::abs(previous)));
      for (double alpha = 0.2; alpha <= kPi; alpha += 0.2) {
        const double value = floquet_eigenvalue(h, bands, n, alpha);
        CHECK(value == doctest::Approx(floquet_eigenvalue(h, bands, n, -alpha)).epsilon(1e-12));
        CHECK(value >= b.lower.lambda - 1e-9);
        CHECK(value <= b.upper.lambda + 1e-9);
        CHECK(std::abs(discriminant(h, value) - 2.0 * std::cos(alpha)) <= 1e-7);
        // Monotone in alpha: increasing on odd bands, decreasing on even ones.
        CHECK((n % 2 ? value > previous : value < previous));
        previous = value;
      }
      CHECK(std::abs(floquet_eigenvalue(h, bands, n, kPi) - b.antiperiodic().lambda) <=
            1e-8 * (1.0 + std::abs(previous)));
    }
  }

  TEST_CASE("Mathieu curvature identity") {
    const HillOperator h = parse_potential("cos:1");
    for (int n = 1; n <= 2; ++n) {
      const HillHessianReport r = hessian_identity_check(h, n);
      CHECK(r.relative_discrepancy <= 1e-3);
      CHECK(r.sign_ok);
      CHECK(r.morse_index == r.expected_index);
      CHECK(r.identity == doctest::Approx(-2.0 / r.delta_prime));
    }
    // Lambda_2 has a maximum at alpha = 0.
    CHECK(hessian_identity_check(h, 2).fd_second_derivative < 0.0);
    CHECK(hessian_identity_check(h, 1).fd_second_derivative > 0.0);
  }

  TEST_CASE("band lookups outside the scan") {
    const HillOperator h = parse_potential("cos:1");
    const BandStructure bands = band_edges(h, 30.0, 3);
    CHECK_FALSE(bands.band(5).has_value());
    CHECK(code_of([&] { floquet_eigenvalue(h, bands, 5, 0.3); }) == ErrorCode::BandNotFound);
  }
}
