// SPDX-License-Identifier: Apache-2.0

// Erasure patterns over the 2N positions of a stacked codeword, and the
// uniform quantizer that is the only noise source.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rfturbo/numerics.hpp"

namespace rfturbo {

// Lost positions in canonical row order of the stacked code, 0 <= i < 2N.
// A paired pattern loses i and i + N together (both halves of one packet).
class ErasurePattern {
 public:
  ErasurePattern() = default;
  // Sorts `lost`; throws kBadRange on out-of-range or repeated indices and
  // when `paired` is set but the set is not closed under i <-> i + N.
  ErasurePattern(std::size_t n, std::vector<Index> lost, bool paired);

  static ErasurePattern none(std::size_t n) { return ErasurePattern(n, {}, true); }

  std::size_t block_size() const { return n_; }
  std::size_t codeword_length() const { return 2 * n_; }
  const std::vector<Index>& lost() const { return lost_; }
  bool paired() const { return paired_; }
  bool is_lost(Index i) const;
  bool closed_under_pairing() const;
  std::vector<Index> survivors() const;

  friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Index> lost_;
  bool paired_ = false;
};

// Pairs start, start + 1, ... (mod N), each taking i and i + N.
ErasurePattern paired_burst(std::size_t n, Index start, std::size_t pairs);

// `count` consecutive positions of the 2N-long codeword (mod 2N), unpaired.
ErasurePattern contiguous_burst(std::size_t n, Index start, std::size_t count);

// Uniform choice of `count` pairs (paired) or `count` positions (unpaired).
ErasurePattern random_erasures(std::size_t n, std::size_t count, bool paired, std::uint64_t seed);

struct Survivors {
  std::vector<Index> indices;
  Vector values;
};

// Keeps the values at surviving positions untouched and in order.
Survivors apply_erasure(const Vector& y, const ErasurePattern& p);

class QuantizerSpec {
 public:
  explicit QuantizerSpec(double step);

  double step() const { return step_; }
  double variance() const { return step_ * step_ / 12.0; }

 private:
  double step_;
};

// Midtread: step * round(y / step).
Vector quantize(const Vector& y, const QuantizerSpec& q);

// How quantization error enters the Monte-Carlo experiments. Plain rounding
// is deterministic, so two copies of the same sample carry the same error.
// Subtractive dither (a shared pseudo-random offset added before rounding and
// removed after) makes every sample's error exactly U[-step/2, step/2] and
// independent of the signal and of every other sample.
enum class NoiseModel { kRounding, kSubtractiveDither };

std::string_view to_string(NoiseModel model);
NoiseModel parse_noise_model(std::string_view text);

// Subtractively dithered quantization with the given offsets, each expected
// in [-step/2, step/2): quantize(y + d) - d.
Vector quantize_dithered(const Vector& y, const Vector& dither, const QuantizerSpec& q);

}  // namespace rfturbo
