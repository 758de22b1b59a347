#pragma once

#include <Eigen/Dense>

namespace nodal_morse::linalg {

/// Default pivot threshold: 1e-10 times the max-row-sum norm.
double default_pivot_threshold(const Eigen::MatrixXd& m);

/// Rank by Gaussian elimination with partial pivoting. threshold < 0 selects
/// the default.
int rank(const Eigen::MatrixXd& m, double threshold = -1.0);

/// Basis of {x : m x = 0} from the reduced row echelon form, one column per
/// free variable, then orthonormalized.
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& m, double threshold = -1.0);

/// Euclidean orthonormalization of the columns (two passes of modified
/// Gram-Schmidt). Columns must be independent.
Eigen::MatrixXd orthonormalize_columns(const Eigen::MatrixXd& m);

/// max_ij |m_ij - m_ji|
double asymmetry(const Eigen::MatrixXd& m);

/// max_ij |m_ij - conj(m_ji)|
double non_hermiticity(const Eigen::MatrixXcd& m);

}  // namespace nodal_morse::linalg
