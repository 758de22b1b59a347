#include "nodal_morse/special_cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <string>

#include "nodal_morse/errors.hpp"
#include "nodal_morse/nodal.hpp"
#include "nodal_morse/spectral.hpp"

namespace nodal_morse {

VanishingReport vanishing_analysis(const SchrodingerOperator& op, int n, const FdOptions& options) {
  const HypothesisReport hyp = check_hypotheses(op, n, options.spectral);
  if (!hyp.simple) {
    throw Error(ErrorCode::DegenerateEigenvalue, "lambda_" + std::to_string(n) + " is not simple");
  }
  const Graph& g = op.graph();
  const double max_abs = hyp.phi.cwiseAbs().maxCoeff();
  std::vector<int> vanishing;
  for (int x = 0; x < g.num_vertices(); ++x) {
    if (std::abs(hyp.phi[x]) < options.spectral.vanish_threshold * max_abs) vanishing.push_back(x);
  }
  if (vanishing.size() != 1) {
    throw Error(ErrorCode::NotSingleVanishing,
                "phi_" + std::to_string(n) + " vanishes at " + std::to_string(vanishing.size()) + " vertices");
  }

  VanishingReport r;
  r.n = n;
  r.lambda = hyp.lambda;
  r.x0 = vanishing.front();
  r.beta = g.beta();
  r.phi = hyp.phi;
  for (int y : g.neighbors(r.x0)) {
    if (hyp.phi[y] > 0.0) {
      ++r.n_plus;
    } else {
      ++r.n_minus;
    }
  }
  r.nullity_bound = std::abs(r.n_plus - r.n_minus);

  const FluxStencil stencil(op, options);
  const FdHessian fd = stencil.hessian(n);
  r.fd_hessian = fd.hessian;
  r.fd_morse = fd.morse();
  r.fd_nullity = r.fd_morse.nullity;
  return r;
}

std::optional<VanishingInstance> random_vanishing_instance(const Graph& g, int x0, std::uint64_t seed) {
  if (x0 < 0 || x0 >= g.num_vertices()) {
    throw Error(ErrorCode::DimensionMismatch, "vertex " + std::to_string(x0) + " out of range");
  }
  const std::vector<int>& around = g.neighbors(x0);
  if (around.size() < 2) return std::nullopt;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> magnitude(0.3, 1.5);
  std::uniform_real_distribution<double> weight(kDefaultWeightRange.lo, kDefaultWeightRange.hi);
  std::uniform_real_distribution<double> diagonal(kDefaultDiagonalRange.lo, kDefaultDiagonalRange.hi);
  std::bernoulli_distribution coin(0.5);
  const int nv = g.num_vertices();

  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::VectorXd phi(nv);
    for (int x = 0; x < nv; ++x) phi[x] = (coin(rng) ? 1.0 : -1.0) * magnitude(rng);
    phi[x0] = 0.0;
    const bool all_positive = std::all_of(around.begin(), around.end(), [&](int y) { return phi[y] > 0.0; });
    const bool all_negative = std::all_of(around.begin(), around.end(), [&](int y) { return phi[y] < 0.0; });
    if (all_positive || all_negative) {
      const int y = around[std::uniform_int_distribution<std::size_t>(0, around.size() - 1)(rng)];
      phi[y] = -phi[y];
    }

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(nv, nv);
    for (const Edge& e : g.edges()) m(e.u, e.v) = m(e.v, e.u) = weight(rng);

    // Solve one weight at x0 so that sum_{y~x0} h_{x0 y} phi(y) = 0.
    std::vector<int> order(around);
    std::shuffle(order.begin(), order.end(), rng);
    bool solved = false;
    for (int pivot : order) {
      double rest = 0.0;
      for (int y : around) {
        if (y != pivot) rest += m(x0, y) * phi[y];
      }
      const double h = -rest / phi[pivot];
      if (h <= -0.05 && h >= -10.0) {
        m(x0, pivot) = m(pivot, x0) = h;
        solved = true;
        break;
      }
    }
    if (!solved) continue;

    for (int x = 0; x < nv; ++x) {
      if (x == x0) {
        m(x, x) = diagonal(rng);
        continue;
      }
      double off = 0.0;
      for (int y : g.neighbors(x)) off += m(x, y) * phi[y];
      m(x, x) = -off / phi[x];
    }

    SchrodingerOperator op(g, m);
    const std::vector<Eigenpair> spectrum = eig_symmetric(op.matrix());
    std::size_t k = 0;
    for (std::size_t j = 1; j < spectrum.size(); ++j) {
      if (std::abs(spectrum[j].value) < std::abs(spectrum[k].value)) k = j;
    }
    return VanishingInstance{std::move(op), static_cast<int>(k) + 1, x0, spectrum[k].simple, phi.normalized()};
  }
  return std::nullopt;
}

namespace {

std::vector<int> two_colouring(const Graph& g) {
  std::vector<int> side(g.num_vertices(), -1);
  std::queue<int> pending;
  side[0] = 0;
  pending.push(0);
  while (!pending.empty()) {
    const int x = pending.front();
    pending.pop();
    for (int y : g.neighbors(x)) {
      if (side[y] < 0) {
        side[y] = 1 - side[x];
        pending.push(y);
      } else if (side[y] == side[x]) {
        throw Error(ErrorCode::NotBipartite,
                    "odd cycle through edge {" + std::to_string(x) + ", " + std::to_string(y) + "}");
      }
    }
  }
  return side;
}

}  // namespace

BipartiteReport bipartite_check(const SchrodingerOperator& op, std::uint64_t seed, int random_fields,
                                const FdOptions& options) {
  const Graph& g = op.graph();
  BipartiteReport r;
  r.side = two_colouring(g);
  r.beta = g.beta();
  r.num_vertices = g.num_vertices();
  r.num_edges = g.num_edges();
  const int nv = g.num_vertices();

  Eigen::VectorXd u(nv);
  for (int x = 0; x < nv; ++x) u[x] = r.side[x] == 0 ? -1.0 : 1.0;
  const Eigen::MatrixXd conjugate = -(u.asDiagonal() * op.matrix() * u.asDiagonal());
  std::optional<SchrodingerOperator> prime;
  try {
    prime.emplace(g, conjugate);
    r.conjugate_in_og = true;
  } catch (const Error&) {
    r.conjugate_in_og = false;
  }
  if (!prime) return r;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int trial = 0; trial < random_fields; ++trial) {
    Eigen::VectorXd alpha(g.num_edges());
    for (Eigen::Index e = 0; e < alpha.size(); ++e) alpha[e] = angle(rng);
    const MagneticField b{OneForm(alpha)};
    const Eigen::VectorXd spec = hermitian_eigenvalues(magnetic_operator(op, b));
    const Eigen::VectorXd spec_prime = hermitian_eigenvalues(magnetic_operator(*prime, b));
    for (int k = 0; k < nv; ++k) {
      r.max_spectral_mismatch = std::max(r.max_spectral_mismatch, std::abs(spec[k] + spec_prime[nv - 1 - k]));
    }
    r.max_top_mismatch = std::max(r.max_top_mismatch, std::abs(spec[nv - 1] + spec_prime[0]));
  }

  const FluxStencil stencil(op, options);
  r.top_hessian = stencil.hessian(nv);
  r.top_morse = r.top_hessian.morse();

  const Eigen::VectorXd ground = real_vector(eig_symmetric(prime->matrix(), options.spectral).front());
  r.sign_changes = sign_changes(op, u.cwiseProduct(ground), std::nullopt, options.spectral.vanish_threshold);
  return r;
}

DeterminantReport determinant_index_check(const SchrodingerOperator& op, int n, const FdOptions& options) {
  const HypothesisReport hyp = check_hypotheses(op, n, options.spectral);
  if (!hyp.ok()) {
    throw Error(ErrorCode::HypothesesViolated,
                "lambda_" + std::to_string(n) + (hyp.simple ? " has a vanishing eigenvector" : " is not simple"));
  }
  const SchrodingerOperator shifted = op.shifted(hyp.lambda);
  const FluxStencil stencil(shifted, options);

  DeterminantReport r;
  r.n = n;
  r.lambda = hyp.lambda;
  r.cofactor = 1.0;
  for (Eigen::Index j = 0; j < stencil.center().size(); ++j) {
    if (j != n - 1) r.cofactor *= stencil.center()[j];
  }
  const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
  r.sign_ok = sign * r.cofactor > 0.0;

  r.lambda_hessian = stencil.hessian(n);
  r.lambda_morse = r.lambda_hessian.morse();
  r.determinant_hessian = stencil.hessian_of([sign](const Eigen::VectorXd& spectrum) { return sign * spectrum.prod(); });
  const Eigen::MatrixXd normalized = r.determinant_hessian.hessian / std::abs(r.cofactor);
  const double tol = std::max(fd_index_tolerance(normalized, options.index_tolerance),
                             r.determinant_hessian.error_estimate / std::abs(r.cofactor));
  r.determinant_morse = morse_index_of_matrix(normalized, tol);
  return r;
}

double magnetic_determinant(const SchrodingerOperator& op, const FluxCoordinates& theta) {
  return magnetic_spectrum(op, theta).prod();
}

}  // namespace nodal_morse
