// SPDX-License-Identifier: Apache-2.0

// The rate-1/2 stacked code T = [T_s; T_pi] and its decoders.

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "rfturbo/channel.hpp"
#include "rfturbo/filterbank.hpp"
#include "rfturbo/interleaver.hpp"
#include "rfturbo/numerics.hpp"

namespace rfturbo {

struct CodeSpec {
  FilterSpec filter;
  std::size_t n = 0;  // block and interleaver size
  Permutation perm;
  BoundaryMode mode = BoundaryMode::kCirculant;

  void validate() const;
};

struct EncodingMatrix {
  Matrix systematic;   // T_s, N x N
  Matrix interleaved;  // T_pi, row i = row perm[i] of T_s
  Matrix stacked;      // T, 2N x N
  std::size_t channels = 0;

  std::size_t block_size() const { return static_cast<std::size_t>(systematic.rows()); }
};

EncodingMatrix build_code(const CodeSpec& spec);

// Canonical row order of T: y[i] = <row i of T, x>.
struct Codeword {
  Vector y;
};

Codeword encode(const EncodingMatrix& em, const Vector& x);

enum class Ordering { kRowOrder, kPaperInterleaved };

std::string_view to_string(Ordering ordering);
Ordering parse_ordering(std::string_view text);

// Position map of a serialization: serialized[p] = y[map[p]]. Row order is
// the identity. The interleaved-channel order emits, for each half of T,
// subband samples two at a time per channel:
//   x_0(0) x_0(1) x_1(0) x_1(1) ... x_{M-1}(1) x_0(2) x_0(3) ...
// Erasure positions given in a serialized order map to rows through it.
std::vector<Index> serialization_map(std::size_t n, std::size_t channels, Ordering ordering);

Vector serialize(const Codeword& cw, std::size_t channels, Ordering ordering);
Codeword deserialize(const Vector& serialized, std::size_t channels, Ordering ordering);

enum class DecodeMethod { kLeastSquares, kProjection, kYoula };

std::string_view to_string(DecodeMethod method);
DecodeMethod parse_decode_method(std::string_view text);

struct ReconstructionResult {
  Vector x_hat;
  DecodeMethod method = DecodeMethod::kLeastSquares;
  double residual = 0.0;  // ||T_r x_hat - observed||
  std::size_t rank_used = 0;
  bool reconstructible = false;
  std::size_t iterations = 0;  // youla only
};

// Minimum-norm least squares over the surviving rows. Does not throw on rank
// deficiency; the flag reports it. Throws kEmptySurvivorSet.
ReconstructionResult decode_least_squares(const EncodingMatrix& em, const Survivors& survivors,
                                          const Tolerance& tol = {});

struct SubsetConditions {
  bool a_perp_in_b = false;  // complement of surviving T_s rows lies in span(surviving T_pi rows)
  bool b_perp_in_a = false;  // and the symmetric inclusion
  bool any() const { return a_perp_in_b || b_perp_in_a; }
};

SubsetConditions subset_conditions(const EncodingMatrix& em, const std::vector<Index>& surviving,
                                   const Tolerance& tol = {});

// One-shot projection decoder: x = P_a x + P_a^perp P_b x, the second term
// assembled coefficient-wise from orthonormal bases b_j of P_a^perp and e_i
// of P_b. Falls back to the mirrored form when only the other inclusion
// holds; throws kNotReconstructible when neither does.
ReconstructionResult decode_projection(const EncodingMatrix& em, const Survivors& survivors,
                                       const Tolerance& tol = {});

struct YoulaResult {
  Vector f;
  std::size_t iterations = 0;
  bool converged = false;
};

// Alternating projections f_{k+1} = g + Q_a P_b f_k with g = P_a f known.
// P_b is the projection onto the affine set {f : P_b f = h}, i.e. signals
// consistent with the interleaved observations, so P_b f_k is
// h + (f_k - proj_b f_k). Stops when ||f_{k+1} - f_k|| <= tol * ||f_{k+1}||
// or after max_iters (converged = false, last iterate returned).
YoulaResult youla_iterate(const Vector& g, const Vector& h, const Matrix& basis_a, const Matrix& basis_b,
                          std::size_t max_iters, double tol);

ReconstructionResult decode_youla(const EncodingMatrix& em, const Survivors& survivors,
                                  std::size_t max_iters = 200, double rel_tol = 1e-12,
                                  const Tolerance& tol = {});

ReconstructionResult decode(const EncodingMatrix& em, const Survivors& survivors, DecodeMethod method,
                            const Tolerance& tol = {});

}  // namespace rfturbo
