#pragma once

// Column-space helpers over R^m with a fixed relative rank tolerance.

#include <Eigen/Dense>

namespace interkernel::linalg {

inline constexpr double kRankTolerance = 1e-9;

using Matrix = Eigen::MatrixXd;

/// Numerical rank (singular values above tol * max(1, sigma_max)).
int rank(const Matrix& a);

/// Orthonormal basis of the column space.
Matrix orth(const Matrix& a);

/// Orthonormal basis of { z : a z = 0 }.
Matrix null_space(const Matrix& a);

/// Column space of [a b].
Matrix sum(const Matrix& a, const Matrix& b);

/// Basis of col(a) ∩ col(b).
Matrix intersection(const Matrix& a, const Matrix& b);

/// Empty m x 0 matrix.
inline Matrix empty(Eigen::Index m) { return Matrix(m, 0); }

}  // namespace interkernel::linalg
