// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "rfturbo/numerics.hpp"

namespace rfturbo {

// A finite frame in R^K, stored as its analysis operator F (one frame vector
// per row). Immutable; bounds and duals are recomputed on request.
class Frame {
 public:
  // Throws kNotAFrame unless rows >= cols and the rows span R^cols.
  explicit Frame(Matrix op, const Tolerance& tol = {});

  static Frame from_vectors(const std::vector<Vector>& vectors, const Tolerance& tol = {});

  std::size_t dim() const { return static_cast<std::size_t>(op_.cols()); }
  std::size_t size() const { return static_cast<std::size_t>(op_.rows()); }
  const Matrix& op() const { return op_; }
  Vector vector(std::size_t k) const { return op_.row(static_cast<Eigen::Index>(k)).transpose(); }

 private:
  Matrix op_;
};

struct FrameBounds {
  double lower = 0.0;  // A
  double upper = 0.0;  // B
  bool tight = false;
  double snug_ratio = 1.0;  // B / A
};

// Bounds of an arbitrary row set viewed as a frame (extreme eigenvalues of
// F^t F). Used directly for filter-bank and stacked-code row sets.
FrameBounds bounds_of_rows(const Matrix& rows, const Tolerance& tol = {});

FrameBounds frame_bounds(const Frame& f, const Tolerance& tol = {});

bool is_uniform(const Frame& f, const Tolerance& tol = {});

// Vectors (F^t F)^{-1} phi_k. Solved column-wise instead of inverting.
Frame dual_frame(const Frame& f, const Tolerance& tol = {});

// Fz: coefficient k is <z, phi_k>.
Vector analyze(const Frame& f, const Vector& z);

// sum_k c_k * dual_k.
Vector synthesize(const Frame& f, const Vector& coeffs);

}  // namespace rfturbo
