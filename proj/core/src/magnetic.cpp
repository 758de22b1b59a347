#include "nodal_morse/magnetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "nodal_morse/errors.hpp"

namespace nodal_morse {

OneForm FluxCoordinates::to_one_form(const Graph& g) const {
  if (theta.size() != g.beta()) {
    throw Error(ErrorCode::DimensionMismatch, "flux vector length " + std::to_string(theta.size()) +
                                                  " differs from beta = " + std::to_string(g.beta()));
  }
  Eigen::VectorXd values = Eigen::VectorXd::Zero(g.num_edges());
  for (int j = 0; j < g.beta(); ++j) values[g.chords()[j]] = theta[j];
  return OneForm(std::move(values));
}

Eigen::MatrixXcd magnetic_operator(const SchrodingerOperator& op, const MagneticField& b) {
  const Graph& g = op.graph();
  if (b.alpha().size() != g.num_edges()) {
    throw Error(ErrorCode::GraphMismatch, "magnetic field has " + std::to_string(b.alpha().size()) +
                                              " edge values, graph has " +
                                              std::to_string(g.num_edges()));
  }
  Eigen::MatrixXcd m = op.matrix().cast<std::complex<double>>();
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const std::complex<double> entry = op.off_diagonal(e) * b.phase(e);
    m(edge.u, edge.v) = entry;
    m(edge.v, edge.u) = std::conj(entry);
  }
  return m;
}

MagneticField gauge_transform(const Graph& g, const MagneticField& b, const Eigen::VectorXd& f) {
  if (b.alpha().size() != g.num_edges()) {
    throw Error(ErrorCode::DimensionMismatch, "magnetic field does not match the graph");
  }
  return MagneticField(OneForm(b.alpha().values() + differential(g, f).values()));
}

GaugeReduction reduce_to_flux(const Graph& g, const OneForm& alpha) {
  if (alpha.size() != g.num_edges()) {
    throw Error(ErrorCode::DimensionMismatch, "1-form does not match the graph");
  }
  // Walk the tree from the root: alpha([p,c]) + f(c) - f(p) = 0 on each tree edge.
  Eigen::VectorXd f = Eigen::VectorXd::Zero(g.num_vertices());
  for (int c : g.bfs_order()) {
    const int p = g.tree_parent()[c];
    if (p < 0) continue;
    f[c] = f[p] - alpha.evaluate(g, p, c);
  }
  const Eigen::VectorXd reduced = alpha.values() + differential(g, f).values();
  GaugeReduction out;
  out.gauge = f;
  out.flux.theta.resize(g.beta());
  for (int j = 0; j < g.beta(); ++j) out.flux.theta[j] = reduced[g.chords()[j]];
  return out;
}

Eigen::VectorXd magnetic_spectrum(const SchrodingerOperator& op, const FluxCoordinates& theta) {
  return hermitian_eigenvalues(magnetic_operator(op, theta.to_field(op.graph())));
}

double lambda_n(const SchrodingerOperator& op, int n, const FluxCoordinates& theta) {
  if (n < 1 || n > op.size()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalue index " + std::to_string(n) + " out of range");
  }
  return magnetic_spectrum(op, theta)[n - 1];
}

MorseIndex morse_index_of_matrix(const Eigen::MatrixXd& m, double tol) {
  MorseIndex out;
  if (m.size() == 0) return out;
  const Eigen::VectorXd values = jacobi_eigensolver(0.5 * (m + m.transpose()), false).values;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values[k] < -tol) {
      ++out.index;
    } else if (values[k] <= tol) {
      ++out.nullity;
    }
  }
  return out;
}

double fd_index_tolerance(const Eigen::MatrixXd& hessian, double relative) {
  if (hessian.size() == 0) return relative;
  const Eigen::VectorXd values = jacobi_eigensolver(0.5 * (hessian + hessian.transpose()), false).values;
  return relative * (1.0 + spectral_norm(values));
}

namespace {

int pair_slot(int i, int j, int beta) {
  // i < j; row-major position among the beta (beta - 1) / 2 pairs.
  return i * beta - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace

FluxStencil::FluxStencil(const SchrodingerOperator& op, const FdOptions& options)
    : beta_(op.graph().beta()), step_(options.step), index_tolerance_(options.index_tolerance) {
  if (!(options.step > 0.0) || options.levels < 2) {
    throw Error(ErrorCode::InvalidRange, "finite differences need a positive step and at least two levels");
  }
  auto spectrum = [&](const Eigen::VectorXd& theta) {
    return magnetic_spectrum(op, FluxCoordinates{theta});
  };
  center_ = spectrum(Eigen::VectorXd::Zero(beta_));
  gap_threshold_ = resolve_gap_threshold(options.spectral, spectral_norm(center_));

  double s = step_;
  for (int k = 0; k < options.levels; ++k, s *= 2.0) {
    Level level;
    level.step = s;
    for (int j = 0; j < beta_; ++j) {
      const Eigen::VectorXd e = s * Eigen::VectorXd::Unit(beta_, j);
      level.plus.push_back(spectrum(e));
      level.minus.push_back(spectrum(-e));
    }
    for (int i = 0; i < beta_; ++i) {
      for (int j = i + 1; j < beta_; ++j) {
        const Eigen::VectorXd ei = s * Eigen::VectorXd::Unit(beta_, i);
        const Eigen::VectorXd ej = s * Eigen::VectorXd::Unit(beta_, j);
        level.pp.push_back(spectrum(ei + ej));
        level.pm.push_back(spectrum(ei - ej));
        level.mp.push_back(spectrum(-ei + ej));
        level.mm.push_back(spectrum(-ei - ej));
      }
    }
    levels_.push_back(std::move(level));
  }
}

const Eigen::VectorXd& FluxStencil::at(const std::vector<Eigen::VectorXd>& v, int i, int j) const {
  return v[pair_slot(i, j, beta_)];
}

Eigen::MatrixXd FluxStencil::assemble(const Level& level,
                                      const std::function<double(const Eigen::VectorXd&)>& f) const {
  const double s = level.step;
  Eigen::MatrixXd h(beta_, beta_);
  const double f0 = f(center_);
  for (int j = 0; j < beta_; ++j) {
    h(j, j) = (f(level.plus[j]) - 2.0 * f0 + f(level.minus[j])) / (s * s);
  }
  for (int i = 0; i < beta_; ++i) {
    for (int j = i + 1; j < beta_; ++j) {
      const double v = (f(at(level.pp, i, j)) - f(at(level.pm, i, j)) - f(at(level.mp, i, j)) +
                        f(at(level.mm, i, j))) /
                       (4.0 * s * s);
      h(i, j) = h(j, i) = v;
    }
  }
  return h;
}

int FluxStencil::require_simple(int n) const {
  if (n < 1 || n > center_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalue index " + std::to_string(n) + " out of range");
  }
  const int k = n - 1;
  auto gap_of = [&](const Eigen::VectorXd& s) {
    double gap = std::numeric_limits<double>::infinity();
    if (k > 0) gap = std::min(gap, s[k] - s[k - 1]);
    if (k + 1 < s.size()) gap = std::min(gap, s[k + 1] - s[k]);
    return gap;
  };
  const double gap0 = gap_of(center_);
  if (!(gap0 > gap_threshold_)) {
    throw Error(ErrorCode::SimplicityLost, "lambda_" + std::to_string(n) + " is not simple at theta = 0");
  }
  auto separated = [&](const Eigen::VectorXd& s) {
    return gap_of(s) > gap_threshold_ && std::abs(s[k] - center_[k]) < 0.5 * gap0;
  };
  int usable = 0;
  for (const Level& level : levels_) {
    bool ok = true;
    for (const auto* list : {&level.plus, &level.minus, &level.pp, &level.pm, &level.mp, &level.mm}) {
      for (const auto& s : *list) ok = ok && separated(s);
    }
    if (!ok) break;
    ++usable;
  }
  if (usable < 2) {
    throw Error(ErrorCode::SimplicityLost,
                "lambda_" + std::to_string(n) + " approaches a neighbour inside the stencil");
  }
  return usable;
}

FdHessian FluxStencil::combine(const std::function<double(const Eigen::VectorXd&)>& f, int usable) const {
  FdHessian out;
  out.gradient.resize(beta_);
  for (int j = 0; j < beta_; ++j) {
    out.gradient[j] = (f(levels_[0].plus[j]) - f(levels_[0].minus[j])) / (2.0 * step_);
  }
  std::vector<Eigen::MatrixXd> raw, richardson;
  for (int k = 0; k < usable; ++k) raw.push_back(assemble(levels_[k], f));
  for (int k = 0; k + 1 < usable; ++k) richardson.push_back((4.0 * raw[k] - raw[k + 1]) / 3.0);

  auto max_abs = [](const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); };
  std::size_t best = 0;
  if (richardson.size() >= 2) {
    out.error_estimate = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < richardson.size(); ++k) {
      const double e = max_abs(richardson[k] - richardson[k + 1]);
      if (e < out.error_estimate) {
        out.error_estimate = e;
        best = k;
      }
    }
  } else {
    out.error_estimate = max_abs(raw[0] - raw[1]);
  }
  out.hessian = richardson[best];
  out.hessian_h = raw[best];
  out.hessian_2h = raw[best + 1];
  out.step = levels_[best].step;
  out.richardson_discrepancy = max_abs(raw[best] - raw[best + 1]);
  const double norm = beta_ > 0 ? spectral_norm(jacobi_eigensolver(out.hessian, false).values) : 0.0;
  out.ill_conditioned = out.error_estimate > 1e-4 * (1.0 + norm);
  out.index_tolerance = std::max(index_tolerance_ * (1.0 + norm), out.error_estimate);
  return out;
}

FdHessian FluxStencil::hessian_of(const std::function<double(const Eigen::VectorXd&)>& functional) const {
  return combine(functional, levels());
}

FdHessian FluxStencil::hessian(int n) const {
  const int usable = require_simple(n);
  const int k = n - 1;
  return combine([k](const Eigen::VectorXd& s) { return s[k]; }, usable);
}

Eigen::VectorXd fd_gradient(const SchrodingerOperator& op, int n, const FdOptions& options) {
  const int beta = op.graph().beta();
  const Eigen::VectorXd center = magnetic_spectrum(op, FluxCoordinates{Eigen::VectorXd::Zero(beta)});
  if (n < 1 || n > center.size()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalue index " + std::to_string(n) + " out of range");
  }
  const double threshold = resolve_gap_threshold(options.spectral, spectral_norm(center));
  auto simple_at = [&](const Eigen::VectorXd& s) {
    const int k = n - 1;
    return (k == 0 || s[k] - s[k - 1] > threshold) && (k + 1 == s.size() || s[k + 1] - s[k] > threshold);
  };
  if (!simple_at(center)) {
    throw Error(ErrorCode::SimplicityLost, "lambda_" + std::to_string(n) + " is not simple at theta = 0");
  }
  Eigen::VectorXd gradient(beta);
  for (int j = 0; j < beta; ++j) {
    const Eigen::VectorXd e = options.step * Eigen::VectorXd::Unit(beta, j);
    const Eigen::VectorXd plus = magnetic_spectrum(op, FluxCoordinates{e});
    const Eigen::VectorXd minus = magnetic_spectrum(op, FluxCoordinates{-e});
    if (!simple_at(plus) || !simple_at(minus)) {
      throw Error(ErrorCode::SimplicityLost, "lambda_" + std::to_string(n) + " collides inside the stencil");
    }
    gradient[j] = (plus[n - 1] - minus[n - 1]) / (2.0 * options.step);
  }
  return gradient;
}

FdHessian fd_hessian(const SchrodingerOperator& op, int n, const FdOptions& options) {
  return FluxStencil(op, options).hessian(n);
}

}  // namespace nodal_morse
