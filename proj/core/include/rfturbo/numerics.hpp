// SPDX-License-Identifier: Apache-2.0

// Dense real-matrix primitives shared by the rest of the library. Matrices
// here are small (at most a few hundred rows), so everything is dense and
// recomputed per call.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rfturbo {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = std::size_t;

struct Tolerance {
  // Singular values at or below rank_eps * sigma_max count as zero.
  double rank_eps = 1e-10;
  // Generic floating equality tolerance (symmetry, unit norms, tightness).
  double eq_eps = 1e-9;

  void validate() const;
};

struct EigenExtremes {
  double min = 0.0;
  double max = 0.0;
};

// Smallest and largest eigenvalue of a symmetric matrix. Rejects inputs with
// max|S - S^t| > eq_eps * max|S| instead of symmetrizing them.
EigenExtremes sym_eig_extremes(const Matrix& s, const Tolerance& tol = {});

// Number of singular values strictly above rank_eps * sigma_max.
std::size_t numerical_rank(const Matrix& a, const Tolerance& tol = {});

// Singular values in decreasing order.
Vector singular_values(const Matrix& a);

// argmin ||Ax - b||, minimum norm among minimizers. Rank deficiency is
// allowed; check numerical_rank separately when it matters.
Vector min_norm_least_squares(const Matrix& a, const Vector& b, const Tolerance& tol = {});

// Factor once, solve many right-hand sides. Used by the Monte-Carlo loops
// where T_r is fixed across trials.
class LeastSquaresSolver {
 public:
  explicit LeastSquaresSolver(const Matrix& a, const Tolerance& tol = {});

  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& rhs) const;
  std::size_t rank() const { return static_cast<std::size_t>(cod_.rank()); }
  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }

 private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod_;
};

// trace((A^t A)^{-1}); throws kSingularGram when A lacks full column rank.
double gram_trace_inverse(const Matrix& a, const Tolerance& tol = {});

struct RowBasis {
  Matrix basis;      // r x n, orthonormal rows spanning rowspace(A)
  Matrix coeff_map;  // rows(A) x r, lower trapezoidal; A = coeff_map * basis
};

// Gram-Schmidt with one reorthogonalization pass, in row order. Rows that are
// orthonormal already come back unchanged, and the coefficient map is
// triangular so observations can be mapped onto basis coordinates by a
// triangular-structured least-squares solve.
RowBasis orthonormal_row_basis(const Matrix& a, const Tolerance& tol = {});

// Orthonormal rows spanning the orthogonal complement of rowspace(basis) in
// R^ambient_dim. `basis` must already have orthonormal rows.
Matrix complement_basis(const Matrix& basis, std::size_t ambient_dim, const Tolerance& tol = {});

Matrix select_rows(const Matrix& a, std::span<const Index> rows);

bool all_finite(const Matrix& a);
bool all_finite(const Vector& v);
void require_finite(const Matrix& a, std::string_view what);
void require_finite(const Vector& v, std::string_view what);

}  // namespace rfturbo
