// SPDX-License-Identifier: Apache-2.0

// MSE prediction and measurement, conditioning diagnostics and brute-force
// recoverability oracles for the stacked code.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rfturbo/channel.hpp"
#include "rfturbo/codec.hpp"
#include "rfturbo/numerics.hpp"

namespace rfturbo {

// Rows of T that survive `pattern`, in row order.
Matrix surviving_rows(const EncodingMatrix& em, const ErasurePattern& pattern);

// sigma2 * trace((T_r^t T_r)^{-1}): expected total squared error of the
// least-squares estimate under white observation noise of variance sigma2.
// Throws kNotReconstructible if T_r is rank deficient or empty.
double predicted_mse(const EncodingMatrix& em, const ErasurePattern& pattern, double sigma2,
                     const Tolerance& tol = {});

struct MseReport {
  double predicted = 0.0;  // total squared error per block, see predicted_mse
  double empirical = 0.0;  // mean of ||x_hat - x||^2 over trials
  std::size_t trials = 0;
  double sigma2 = 0.0;
  std::uint64_t seed = 0;
  NoiseModel noise = NoiseModel::kRounding;
  ErasurePattern pattern;

  double per_sample_empirical(std::size_t n) const { return empirical / static_cast<double>(n); }
};

// Monte-Carlo check of predicted_mse: x ~ U[-1, 1]^N, quantized surviving
// codeword, least-squares decode. Deterministic per seed; the dither stream
// is separate, so x draws do not depend on the noise model.
//
// T_pi repeats the rows of T_s, so under kRounding duplicated samples share
// their error and the white-noise prediction does not apply.
MseReport empirical_mse(const CodeSpec& spec, const ErasurePattern& pattern, const QuantizerSpec& q,
                        std::size_t trials, std::uint64_t seed, NoiseModel noise = NoiseModel::kRounding,
                        const Tolerance& tol = {});

// Same, for a prebuilt code.
MseReport empirical_mse(const EncodingMatrix& em, const ErasurePattern& pattern, const QuantizerSpec& q,
                        std::size_t trials, std::uint64_t seed, NoiseModel noise = NoiseModel::kRounding,
                        const Tolerance& tol = {});

struct EigenSpread {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double ratio = 1.0;  // +inf when T_r is rank deficient
};

EigenSpread eigen_spread(const EncodingMatrix& em, const ErasurePattern& pattern, const Tolerance& tol = {});

// Survivors span R^N.
bool recoverable(const EncodingMatrix& em, const ErasurePattern& pattern, const Tolerance& tol = {});

// trace((T_r^t T_r)^{-1}) when T_r has full column rank, nullopt otherwise.
// One eigenvalue solve of the Gram matrix serves as both rank screen and
// trace when the spectrum is well separated from zero; borderline cases fall
// back to the SVD rank and the QR-based gram_trace_inverse.
std::optional<double> trace_if_recoverable(const EncodingMatrix& em, const ErasurePattern& pattern,
                                           const Tolerance& tol = {});

struct BurstScan {
  std::size_t max_pairs = 0;  // largest p with every burst of 1..p pairs recoverable
  std::size_t tested = 0;
};

// Grows a paired burst from `start` one pair at a time until the first
// unrecoverable pattern.
BurstScan scan_paired_bursts(const EncodingMatrix& em, Index start, const Tolerance& tol = {});

struct BurstWitness {
  Index start = 0;
  std::size_t pairs = 0;
  bool recoverable = false;
};

struct RecoverabilityReport {
  std::string check;  // "theorem1", "theorem2", "theorem3"
  std::string filter;
  std::size_t channels = 0;
  std::size_t length = 0;
  std::size_t n = 0;
  std::string perm;
  std::size_t k = 0;       // (k-1)M < N/2 < kM, theorems 2 and 3
  std::size_t margin = 0;  // N/2 - (k-1)M, theorem 3
  std::size_t max_pairs_recoverable = 0;
  std::size_t claimed_bound = 0;  // in pairs; symbols lost = 2 * pairs
  std::size_t patterns_tested = 0;
  bool agree = false;
  std::vector<std::size_t> per_start_max;  // indexed by start, for every start scanned
  std::optional<BurstWitness> last_success;
  std::optional<BurstWitness> first_failure;
  std::vector<BurstWitness> contradictions;  // patterns that disagree with the claim
};

struct OracleOptions {
  bool all_starts = false;  // theorems 2 and 3 default to start 0 only
};

// Two-channel bank with the given permutation (half shift unless overridden),
// circulant. For every start: N/2 pairs recoverable and N/2 + 1 not.
RecoverabilityReport verify_theorem1(const FilterSpec& filter, std::size_t n, const Tolerance& tol = {});
RecoverabilityReport verify_theorem1(const FilterSpec& filter, std::size_t n, const Permutation& perm,
                                     const Tolerance& tol = {});

// Block DCT with L = M, half shift. Claimed maximum kM - 1 pairs. Throws
// kBoundaryCase when M divides N/2 (the strict inequality has no solution).
RecoverabilityReport verify_theorem2(std::size_t m, std::size_t n, const Tolerance& tol = {},
                                     const OracleOptions& options = {});

// Lapped bank with L = 2M, half shift. Claimed maximum M + N/2 pairs.
RecoverabilityReport verify_theorem3(std::size_t m, std::size_t n, const Tolerance& tol = {},
                                     const OracleOptions& options = {});

// Block transform with M x M DCT blocks; when M does not divide N the last
// block is a smaller DCT of size N mod M. Half shift, circulant.
EncodingMatrix block_dct_code(std::size_t m, std::size_t n);

struct CorollaryRow {
  std::size_t channels = 0;
  std::size_t k = 0;
  std::size_t formula_symbols = 0;  // 2(kM - 1)
  std::size_t oracle_symbols = 0;   // 2 * longest recoverable burst from start 0
  std::size_t remainder_block = 0;  // N mod M
  bool agree = false;
};

std::vector<CorollaryRow> corollary1_table(std::size_t n = 150, const std::vector<std::size_t>& channels = {4, 8, 16, 32},
                                           const Tolerance& tol = {});

// Smallest k with (k-1)M < N/2 < kM, if the inequality is strict-solvable.
std::optional<std::size_t> strict_k(std::size_t m, std::size_t n);

}  // namespace rfturbo
