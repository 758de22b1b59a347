#include "nodal_morse/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#include "nodal_morse/errors.hpp"
#include "nodal_morse/linalg.hpp"

namespace nodal_morse {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergedOffNorm = 1e-12;
// Sweeping continues past the convergence criterion down to round-off; one
// more sweep is quadratically cheap and sharpens finite-difference inputs.
constexpr double kTargetOffNorm = 1e-15;

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

void fill_gaps(std::vector<Eigenpair>& pairs, double threshold) {
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    double gap = std::numeric_limits<double>::infinity();
    if (k > 0) gap = std::min(gap, pairs[k].value - pairs[k - 1].value);
    if (k + 1 < pairs.size()) gap = std::min(gap, pairs[k + 1].value - pairs[k].value);
    pairs[k].gap = gap;
    pairs[k].simple = gap > threshold;
  }
}

}  // namespace

SymmetricDecomposition jacobi_eigensolver(const Eigen::MatrixXd& m, bool compute_vectors) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd a = m;
  Eigen::MatrixXd v;
  if (compute_vectors) v = Eigen::MatrixXd::Identity(n, n);
  const double norm = m.norm();

  int sweep = 0;
  for (;; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off <= kTargetOffNorm * norm) break;
    if (sweep == kMaxSweeps) {
      if (off <= kConvergedOffNorm * norm) break;
      throw Error(ErrorCode::NoConvergence,
                  "Jacobi sweeps exhausted with off-diagonal norm " + std::to_string(off));
    }
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double negligible = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(a(p, p)) + negligible == std::abs(a(p, p)) &&
            std::abs(a(q, q)) + negligible == std::abs(a(q, q))) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        if (s == 0.0) continue;
        rotated = true;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        if (compute_vectors) {
          for (Eigen::Index k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
    // Rotations that no longer change anything mean we are at round-off.
    if (!rotated) break;
  }

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  SymmetricDecomposition out;
  out.sweeps = sweep;
  out.values.resize(n);
  if (compute_vectors) out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    if (compute_vectors) out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

void fix_phase(Eigen::VectorXcd& v) {
  if (v.size() == 0) return;
  const double max_abs = v.cwiseAbs().maxCoeff();
  if (max_abs == 0.0) return;
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    if (std::abs(v[x]) >= 0.5 * max_abs) {
      v *= std::conj(v[x]) / std::abs(v[x]);
      v[x] = std::abs(v[x]);
      return;
    }
  }
}

double spectral_norm(const Eigen::VectorXd& eigenvalues) {
  return eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
}

double resolve_gap_threshold(const SpectralOptions& options, double norm) {
  return options.gap_threshold < 0.0 ? 1e-8 * (1.0 + norm) : options.gap_threshold;
}

std::vector<Eigenpair> eig_symmetric(const Eigen::MatrixXd& m, const SpectralOptions& options) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  const double scale = m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
  if (linalg::asymmetry(m) > 1e-10 * scale) {
    throw Error(ErrorCode::NotSymmetric, "eig_symmetric requires a symmetric matrix");
  }
  const SymmetricDecomposition dec = jacobi_eigensolver(0.5 * (m + m.transpose()));
  std::vector<Eigenpair> pairs(dec.values.size());
  for (Eigen::Index k = 0; k < dec.values.size(); ++k) {
    Eigenpair& p = pairs[k];
    p.n = static_cast<int>(k) + 1;
    p.value = dec.values[k];
    p.vector = dec.vectors.col(k).cast<std::complex<double>>();
    p.vector.normalize();
    fix_phase(p.vector);
  }
  fill_gaps(pairs, resolve_gap_threshold(options, spectral_norm(dec.values)));
  return pairs;
}

namespace {

Eigen::MatrixXd real_embedding(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd e(2 * n, 2 * n);
  const Eigen::MatrixXd re = 0.5 * (m.real() + m.real().transpose());
  const Eigen::MatrixXd im = 0.5 * (m.imag() - m.imag().transpose());
  e.topLeftCorner(n, n) = re;
  e.topRightCorner(n, n) = -im;
  e.bottomLeftCorner(n, n) = im;
  e.bottomRightCorner(n, n) = re;
  return e;
}

void check_hermitian(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  const double scale = m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
  if (linalg::non_hermiticity(m) > 1e-10 * scale) {
    throw Error(ErrorCode::NotSymmetric, "eig_hermitian requires a Hermitian matrix");
  }
}

// Embedding eigenvalues come in equal pairs; returns their means.
Eigen::VectorXd pair_values(const Eigen::VectorXd& doubled, double tolerance) {
  const Eigen::Index n = doubled.size() / 2;
  Eigen::VectorXd values(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double a = doubled[2 * k];
    const double b = doubled[2 * k + 1];
    if (std::abs(a - b) > tolerance) {
      throw Error(ErrorCode::EmbeddingPairingFailure,
                  "embedded eigenvalues " + std::to_string(a) + " and " + std::to_string(b) +
                      " do not pair");
    }
    values[k] = 0.5 * (a + b);
  }
  return values;
}

double pairing_tolerance(const Eigen::VectorXd& doubled) {
  return 1e-8 * (1.0 + spectral_norm(doubled));
}

}  // namespace

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  check_hermitian(m);
  const SymmetricDecomposition dec = jacobi_eigensolver(real_embedding(m), false);
  return pair_values(dec.values, pairing_tolerance(dec.values));
}

std::vector<Eigenpair> eig_hermitian(const Eigen::MatrixXcd& m, const SpectralOptions& options) {
  check_hermitian(m);
  const Eigen::Index n = m.rows();
  const SymmetricDecomposition dec = jacobi_eigensolver(real_embedding(m), true);
  const double tolerance = pairing_tolerance(dec.values);
  const Eigen::VectorXd values = pair_values(dec.values, tolerance);

  // Each embedded eigenvector (u; w) gives the complex eigenvector u + i w.
  // Within a cluster of equal eigenvalues the 2k embedded vectors span a
  // k-dimensional complex space; complex Gram-Schmidt extracts a basis.
  std::vector<Eigenpair> pairs(n);
  Eigen::Index k = 0;
  while (k < n) {
    Eigen::Index end = k + 1;
    while (end < n && values[end] - values[end - 1] <= tolerance) ++end;
    std::vector<Eigen::VectorXcd> basis;
    for (Eigen::Index j = 2 * k; j < 2 * end && static_cast<Eigen::Index>(basis.size()) < end - k; ++j) {
      Eigen::VectorXcd z(n);
      for (Eigen::Index x = 0; x < n; ++x) z[x] = {dec.vectors(x, j), dec.vectors(n + x, j)};
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) z -= b.dot(z) * b;
      }
      const double norm = z.norm();
      if (norm > 0.5) basis.push_back(z / norm);
    }
    if (static_cast<Eigen::Index>(basis.size()) != end - k) {
      throw Error(ErrorCode::EmbeddingPairingFailure, "could not reassemble complex eigenvectors");
    }
    for (Eigen::Index j = k; j < end; ++j) {
      Eigenpair& p = pairs[j];
      p.n = static_cast<int>(j) + 1;
      p.value = values[j];
      p.vector = basis[j - k];
      fix_phase(p.vector);
    }
    k = end;
  }
  fill_gaps(pairs, resolve_gap_threshold(options, spectral_norm(values)));
  return pairs;
}

double residual(const Eigen::MatrixXcd& m, const Eigenpair& pair) {
  return (m * pair.vector - pair.value * pair.vector).norm();
}

Eigen::VectorXd real_vector(const Eigenpair& pair) { return pair.vector.real(); }

HypothesisReport check_hypotheses(const SchrodingerOperator& op, int n, const SpectralOptions& options) {
  if (n < 1 || n > op.size()) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalue index " + std::to_string(n) + " out of range");
  }
  const std::vector<Eigenpair> spectrum = eig_symmetric(op.matrix(), options);
  const Eigenpair& pair = spectrum[n - 1];
  HypothesisReport report;
  report.n = n;
  report.lambda = pair.value;
  report.simple = pair.simple;
  report.gap = pair.gap;
  report.phi = real_vector(pair);
  const double max_abs = report.phi.cwiseAbs().maxCoeff();
  report.min_abs_ratio = report.phi.cwiseAbs().minCoeff() / max_abs;
  for (Eigen::Index x = 0; x < report.phi.size(); ++x) {
    if (std::abs(report.phi[x]) < options.vanish_threshold * max_abs) {
      report.vanishing_vertex = static_cast<int>(x);
      break;
    }
  }
  report.nonvanishing = report.vanishing_vertex < 0;
  return report;
}

}  // namespace nodal_morse
