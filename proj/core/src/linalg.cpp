#include "nodal_morse/linalg.hpp"

#include <cmath>
#include <vector>

namespace nodal_morse::linalg {

namespace {

// Reduces `a` in place to reduced row echelon form; returns pivot columns.
std::vector<int> reduce(Eigen::MatrixXd& a, double threshold) {
  std::vector<int> pivots;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index best = row;
    for (Eigen::Index r = row + 1; r < rows; ++r) {
      if (std::abs(a(r, col)) > std::abs(a(best, col))) best = r;
    }
    if (std::abs(a(best, col)) <= threshold) {
      a.block(row, col, rows - row, 1).setZero();
      continue;
    }
    a.row(row).swap(a.row(best));
    a.row(row) /= a(row, col);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r != row && a(r, col) != 0.0) a.row(r) -= a(r, col) * a.row(row);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

double resolve(const Eigen::MatrixXd& m, double threshold) {
  return threshold < 0.0 ? default_pivot_threshold(m) : threshold;
}

}  // namespace

double default_pivot_threshold(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return 1e-10 * m.cwiseAbs().rowwise().sum().maxCoeff();
}

int rank(const Eigen::MatrixXd& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::MatrixXd a = m;
  return static_cast<int>(reduce(a, resolve(m, threshold)).size());
}

Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double threshold) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return Eigen::MatrixXd::Identity(cols, cols);
  Eigen::MatrixXd a = m;
  const std::vector<int> pivots = reduce(a, resolve(m, threshold));
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;

  Eigen::MatrixXd basis(cols, cols - static_cast<Eigen::Index>(pivots.size()));
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(cols);
    v[free] = 1.0;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(static_cast<Eigen::Index>(r), free);
    basis.col(k++) = v;
  }
  if (basis.cols() == 0) return basis;
  return orthonormalize_columns(basis);
}

Eigen::MatrixXd orthonormalize_columns(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd q = m;
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
    }
    q.col(j).normalize();
  }
  return q;
}

double asymmetry(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

double non_hermiticity(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace nodal_morse::linalg
