// SPDX-License-Identifier: Apache-2.0

// Critically sampled analysis filter banks and the N x N block analysis
// matrix they induce.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "rfturbo/frames.hpp"
#include "rfturbo/numerics.hpp"

namespace rfturbo {

struct FilterSpec {
  std::string name;
  std::size_t channels = 0;  // M
  std::size_t length = 0;    // L, taps per filter
  // coeffs[k][n] = h_k[n], k < M, n < L
  std::vector<std::vector<double>> coeffs;

  // Throws kInvalidArgument unless L >= M, M divides L, the coefficient
  // table is M x L and every tap is finite.
  void validate() const;
};

// E_{k,n}(z) = sum_m h_k[mM - n] z^{-m}; entry(k, n)[m] is the coefficient of
// z^{-m}.
class PolyphaseMatrix {
 public:
  PolyphaseMatrix(std::size_t channels, std::size_t terms);

  std::size_t channels() const { return channels_; }
  std::size_t terms() const { return terms_; }
  std::vector<double>& entry(std::size_t k, std::size_t n) { return entries_[k * channels_ + n]; }
  const std::vector<double>& entry(std::size_t k, std::size_t n) const {
    return entries_[k * channels_ + n];
  }

 private:
  std::size_t channels_;
  std::size_t terms_;
  std::vector<std::vector<double>> entries_;
};

PolyphaseMatrix polyphase_decompose(const FilterSpec& f);

// Inverse of polyphase_decompose: H_k(z) = sum_n z^n E_{k,n}(z^M).
std::vector<std::vector<double>> polyphase_reassemble(const PolyphaseMatrix& e, std::size_t length);

enum class BoundaryMode { kCirculant, kZeroTail };

std::string_view to_string(BoundaryMode mode);
BoundaryMode parse_boundary_mode(std::string_view text);

// Shift-orthonormality of {h_k shifted by multiples of M}: checked on a
// circulant matrix wide enough (N = 2L) that no row overlaps its own wrap.
bool validate_orthonormal(const FilterSpec& f, const Tolerance& tol = {});

// T_s: row jM + k holds h_k time-reversed, (h_k[L-1], ..., h_k[0]), starting
// at column jM. Taps past column N-1 wrap modulo N (kCirculant) or are
// dropped (kZeroTail). Throws kBadBlockSize unless M | N and N >= L.
Matrix build_analysis_matrix(const FilterSpec& f, std::size_t n, BoundaryMode mode = BoundaryMode::kCirculant);

enum class FilterFamily { kHaar, kBlockDct, kLapped };

std::string_view to_string(FilterFamily family);
FilterFamily parse_filter_family(std::string_view text);

// haar: M = L = 2. block_dct: L = M, rows of T_s are the orthonormal DCT-II
// basis. lapped: L = 2M sine-window modulated lapped transform. Throws
// kUnsupportedM when M < 2 (haar ignores the argument).
FilterSpec builtin_family(FilterFamily family, std::size_t channels = 2);

enum class RowScaling { kRaw, kUnitNorm };

// Frame bounds of the rows of the circulant T_s. With kUnitNorm rows are
// normalized first, which puts the bounds around 1 (A <= 1 <= B, equality
// for a paraunitary bank).
FrameBounds fb_frame_bounds(const FilterSpec& f, std::size_t n, RowScaling scaling = RowScaling::kRaw,
                            const Tolerance& tol = {});

}  // namespace rfturbo
