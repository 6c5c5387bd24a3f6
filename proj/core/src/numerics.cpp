// SPDX-License-Identifier: Apache-2.0

#include "rfturbo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rfturbo/error.hpp"

namespace rfturbo {

void Tolerance::validate() const {
  if (!(rank_eps > 0.0 && rank_eps < 1.0) || !(eq_eps > 0.0 && eq_eps < 1.0)) {
    fail(ErrorKind::kInvalidArgument, "tolerances must lie in (0, 1)");
  }
}

EigenExtremes sym_eig_extremes(const Matrix& s, const Tolerance& tol) {
  if (s.rows() != s.cols()) {
    fail(ErrorKind::kNonSquare, "expected a square matrix, got " + std::to_string(s.rows()) +
                                    "x" + std::to_string(s.cols()));
  }
  if (s.size() == 0) fail(ErrorKind::kDimensionMismatch, "empty matrix has no eigenvalues");
  const double scale = s.cwiseAbs().maxCoeff();
  const double asym = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol.eq_eps * scale) {
    fail(ErrorKind::kNonSymmetric, "max|S - S^t| = " + std::to_string(asym));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(s, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev(0), ev(ev.size() - 1)};
}

Vector singular_values(const Matrix& a) {
  if (a.size() == 0) return Vector{};
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues();
}

std::size_t numerical_rank(const Matrix& a, const Tolerance& tol) {
  if (a.size() == 0) return 0;

  // Fast path for tall matrices that are obviously full column rank: if the
  // Gram spectrum ratio clears rank_eps^2 by a wide margin, no singular value
  // can fall under the cutoff. Anything borderline goes to the SVD.
  if (a.rows() >= a.cols()) {
    const Matrix gram = a.transpose() * a;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    const double lmax = es.eigenvalues()(es.eigenvalues().size() - 1);
    const double screen = std::max(1e-8, 4.0 * tol.rank_eps * tol.rank_eps);
    if (lmax > 0.0 && lmin > screen * lmax) return static_cast<std::size_t>(a.cols());
  }

  const Vector sv = singular_values(a);
  const double smax = sv(0);
  if (smax == 0.0) return 0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol.rank_eps * smax) ++rank;
  }
  return rank;
}

Vector min_norm_least_squares(const Matrix& a, const Vector& b, const Tolerance& tol) {
  return LeastSquaresSolver(a, tol).solve(b);
}

LeastSquaresSolver::LeastSquaresSolver(const Matrix& a, const Tolerance& tol)
    : rows_(a.rows()), cols_(a.cols()) {
  if (a.size() > 0) {
    cod_.setThreshold(tol.rank_eps);
    cod_.compute(a);
  }
}

Vector LeastSquaresSolver::solve(const Vector& b) const {
  if (b.size() != rows_) {
    fail(ErrorKind::kDimensionMismatch, "least squares: rows(A) = " + std::to_string(rows_) +
                                            " but length(b) = " + std::to_string(b.size()));
  }
  if (rows_ == 0 || cols_ == 0) return Vector::Zero(cols_);
  return cod_.solve(b);
}

Matrix LeastSquaresSolver::solve(const Matrix& rhs) const {
  if (rhs.rows() != rows_) {
    fail(ErrorKind::kDimensionMismatch, "least squares: rows(A) = " + std::to_string(rows_) +
                                            " but rows(B) = " + std::to_string(rhs.rows()));
  }
  if (rows_ == 0 || cols_ == 0) return Matrix::Zero(cols_, rhs.cols());
  return cod_.solve(rhs);
}

double gram_trace_inverse(const Matrix& a, const Tolerance& tol) {
  if (a.cols() < 1) fail(ErrorKind::kDimensionMismatch, "gram_trace_inverse needs cols >= 1");
  const auto rank = numerical_rank(a, tol);
  if (rank < static_cast<std::size_t>(a.cols())) {
    fail(ErrorKind::kSingularGram, "rank " + std::to_string(rank) + " < " +
                                       std::to_string(a.cols()) + " columns");
  }
  // A = QR  =>  (A^t A)^{-1} = R^{-1} R^{-t}, whose trace is ||R^{-1}||_F^2.
  const Eigen::HouseholderQR<Matrix> qr(a);
  const Eigen::Index n = a.cols();
  const Matrix r = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  const Matrix rinv = r.triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
  return rinv.squaredNorm();
}

RowBasis orthonormal_row_basis(const Matrix& a, const Tolerance& tol) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) scale = std::max(scale, a.row(i).norm());

  Matrix q(std::min(m, n), n);
  Matrix coeff = Matrix::Zero(m, std::min(m, n));
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    Vector v = a.row(i).transpose();
    for (int pass = 0; pass < 2 && r > 0; ++pass) {
      const Vector p = q.topRows(r) * v;
      v -= q.topRows(r).transpose() * p;
      coeff.row(i).head(r) += p.transpose();
    }
    const double nv = v.norm();
    if (scale > 0.0 && nv > tol.rank_eps * scale && r < n) {
      q.row(r) = (v / nv).transpose();
      coeff(i, r) = nv;
      ++r;
    }
  }
  return {q.topRows(r), coeff.leftCols(r)};
}

Matrix complement_basis(const Matrix& basis, std::size_t ambient_dim, const Tolerance& tol) {
  const auto dim = static_cast<Eigen::Index>(ambient_dim);
  if (basis.rows() > 0 && basis.cols() != dim) {
    fail(ErrorKind::kDimensionMismatch, "basis has " + std::to_string(basis.cols()) +
                                            " columns, ambient dimension is " +
                                            std::to_string(ambient_dim));
  }
  if (basis.rows() > dim) {
    fail(ErrorKind::kDimensionMismatch, "more basis rows than the ambient dimension");
  }
  const Eigen::Index r = basis.rows();
  if (r == 0) return Matrix::Identity(dim, dim);

  const Matrix gram = basis * basis.transpose();
  const double dev = (gram - Matrix::Identity(r, r)).cwiseAbs().maxCoeff();
  if (dev > std::sqrt(tol.eq_eps)) {
    fail(ErrorKind::kInvalidArgument, "complement_basis requires orthonormal rows");
  }
  const Eigen::HouseholderQR<Matrix> qr(basis.transpose());
  const Matrix full_q = qr.householderQ();
  return full_q.rightCols(dim - r).transpose();
}

Matrix select_rows(const Matrix& a, std::span<const Index> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(rows[i]);
    if (row >= a.rows()) fail(ErrorKind::kBadRange, "row index out of range");
    out.row(static_cast<Eigen::Index>(i)) = a.row(row);
  }
  return out;
}

bool all_finite(const Matrix& a) { return a.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

void require_finite(const Matrix& a, std::string_view what) {
  if (!a.allFinite()) fail(ErrorKind::kInvalidArgument, std::string(what) + " has non-finite entries");
}

void require_finite(const Vector& v, std::string_view what) {
  if (!v.allFinite()) fail(ErrorKind::kInvalidArgument, std::string(what) + " has non-finite entries");
}

}  // namespace rfturbo
