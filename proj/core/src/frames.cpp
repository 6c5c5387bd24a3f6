// SPDX-License-Identifier: Apache-2.0

#include "rfturbo/frames.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "rfturbo/error.hpp"

namespace rfturbo {

Frame::Frame(Matrix op, const Tolerance& tol) : op_(std::move(op)) {
  require_finite(op_, "frame vectors");
  if (op_.cols() == 0 || op_.rows() < op_.cols()) {
    fail(ErrorKind::kNotAFrame, std::to_string(op_.rows()) + " vectors cannot span R^" +
                                    std::to_string(op_.cols()));
  }
  const auto rank = numerical_rank(op_, tol);
  if (rank < static_cast<std::size_t>(op_.cols())) {
    fail(ErrorKind::kNotAFrame, "vectors span only " + std::to_string(rank) + " of " +
                                    std::to_string(op_.cols()) + " dimensions");
  }
}

Frame Frame::from_vectors(const std::vector<Vector>& vectors, const Tolerance& tol) {
  if (vectors.empty()) fail(ErrorKind::kNotAFrame, "empty vector set");
  const Eigen::Index k = vectors.front().size();
  Matrix op(static_cast<Eigen::Index>(vectors.size()), k);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != k) fail(ErrorKind::kDimensionMismatch, "frame vectors differ in length");
    op.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  }
  return Frame(std::move(op), tol);
}

FrameBounds bounds_of_rows(const Matrix& rows, const Tolerance& tol) {
  const Matrix gram = rows.transpose() * rows;
  // F^t F is symmetric up to rounding; symmetrize so the strict check in
  // sym_eig_extremes only ever sees genuine asymmetry.
  const auto ext = sym_eig_extremes(0.5 * (gram + gram.transpose()), tol);
  FrameBounds out;
  out.lower = ext.min;
  out.upper = ext.max;
  out.snug_ratio = ext.min > 0.0 ? ext.max / ext.min : INFINITY;
  out.tight = ext.min > 0.0 && (out.snug_ratio - 1.0) <= tol.eq_eps;
  return out;
}

FrameBounds frame_bounds(const Frame& f, const Tolerance& tol) { return bounds_of_rows(f.op(), tol); }

bool is_uniform(const Frame& f, const Tolerance& tol) {
  for (Eigen::Index k = 0; k < f.op().rows(); ++k) {
    if (std::abs(f.op().row(k).norm() - 1.0) > tol.eq_eps) return false;
  }
  return true;
}

Frame dual_frame(const Frame& f, const Tolerance& tol) {
  const Matrix gram = f.op().transpose() * f.op();
  const Eigen::LDLT<Matrix> ldlt(gram);
  if (ldlt.info() != Eigen::Success) fail(ErrorKind::kNotAFrame, "frame operator not invertible");
  const Matrix x = ldlt.solve(Matrix(f.op().transpose()));
  return Frame(x.transpose(), tol);
}

Vector analyze(const Frame& f, const Vector& z) {
  if (static_cast<std::size_t>(z.size()) != f.dim()) {
    fail(ErrorKind::kDimensionMismatch, "analyze: length(z) = " + std::to_string(z.size()) +
                                            ", frame dimension " + std::to_string(f.dim()));
  }
  return f.op() * z;
}

Vector synthesize(const Frame& f, const Vector& coeffs) {
  if (static_cast<std::size_t>(coeffs.size()) != f.size()) {
    fail(ErrorKind::kDimensionMismatch, "synthesize: expected " + std::to_string(f.size()) +
                                            " coefficients, got " + std::to_string(coeffs.size()));
  }
  return dual_frame(f).op().transpose() * coeffs;
}

}  // namespace rfturbo
