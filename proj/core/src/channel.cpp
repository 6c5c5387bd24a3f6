// SPDX-License-Identifier: Apache-2.0

#include "rfturbo/channel.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "rfturbo/error.hpp"
#include "rfturbo/interleaver.hpp"

namespace rfturbo {

ErasurePattern::ErasurePattern(std::size_t n, std::vector<Index> lost, bool paired)
    : n_(n), lost_(std::move(lost)), paired_(paired) {
  std::sort(lost_.begin(), lost_.end());
  if (std::adjacent_find(lost_.begin(), lost_.end()) != lost_.end()) {
    fail(ErrorKind::kBadRange, "erasure indices must be distinct");
  }
  if (!lost_.empty() && lost_.back() >= 2 * n_) {
    fail(ErrorKind::kBadRange, "erasure index " + std::to_string(lost_.back()) + " outside [0, " +
                                   std::to_string(2 * n_) + ")");
  }
  if (paired_ && !closed_under_pairing()) {
    fail(ErrorKind::kBadRange, "pattern marked paired but not closed under i <-> i + N");
  }
}

bool ErasurePattern::is_lost(Index i) const { return std::binary_search(lost_.begin(), lost_.end(), i); }

bool ErasurePattern::closed_under_pairing() const {
  for (Index i : lost_) {
    const Index partner = i < n_ ? i + n_ : i - n_;
    if (!is_lost(partner)) return false;
  }
  return true;
}

std::vector<Index> ErasurePattern::survivors() const {
  std::vector<Index> out;
  out.reserve(2 * n_ - lost_.size());
  auto it = lost_.begin();
  for (Index i = 0; i < 2 * n_; ++i) {
    if (it != lost_.end() && *it == i) {
      ++it;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

ErasurePattern paired_burst(std::size_t n, Index start, std::size_t pairs) {
  if (n == 0 || start >= n || pairs < 1 || pairs > n) {
    fail(ErrorKind::kBadRange, "paired_burst needs 0 <= start < N and 1 <= pairs <= N (N = " +
                                   std::to_string(n) + ", start = " + std::to_string(start) +
                                   ", pairs = " + std::to_string(pairs) + ")");
  }
  std::vector<Index> lost;
  lost.reserve(2 * pairs);
  for (std::size_t j = 0; j < pairs; ++j) {
    const Index i = (start + j) % n;
    lost.push_back(i);
    lost.push_back(i + n);
  }
  return ErasurePattern(n, std::move(lost), true);
}

ErasurePattern contiguous_burst(std::size_t n, Index start, std::size_t count) {
  if (n == 0 || start >= 2 * n || count > 2 * n) {
    fail(ErrorKind::kBadRange, "contiguous_burst out of range");
  }
  std::vector<Index> lost;
  lost.reserve(count);
  for (std::size_t j = 0; j < count; ++j) lost.push_back((start + j) % (2 * n));
  return ErasurePattern(n, std::move(lost), false);
}

ErasurePattern random_erasures(std::size_t n, std::size_t count, bool paired, std::uint64_t seed) {
  const std::size_t population = paired ? n : 2 * n;
  if (count > population) {
    fail(ErrorKind::kBadCount, "cannot erase " + std::to_string(count) + " of " +
                                   std::to_string(population) + (paired ? " pairs" : " positions"));
  }
  // First `count` entries of a uniform permutation are a uniform subset.
  const Permutation order = random_perm(population, seed);
  std::vector<Index> lost;
  for (std::size_t j = 0; j < count; ++j) {
    lost.push_back(order[j]);
    if (paired) lost.push_back(order[j] + n);
  }
  return ErasurePattern(n, std::move(lost), paired);
}

Survivors apply_erasure(const Vector& y, const ErasurePattern& p) {
  if (static_cast<std::size_t>(y.size()) != p.codeword_length()) {
    fail(ErrorKind::kSizeMismatch, "codeword length " + std::to_string(y.size()) +
                                       " does not match pattern length " +
                                       std::to_string(p.codeword_length()));
  }
  Survivors s;
  s.indices = p.survivors();
  s.values.resize(static_cast<Eigen::Index>(s.indices.size()));
  for (std::size_t j = 0; j < s.indices.size(); ++j) {
    s.values(static_cast<Eigen::Index>(j)) = y(static_cast<Eigen::Index>(s.indices[j]));
  }
  return s;
}

QuantizerSpec::QuantizerSpec(double step) : step_(step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    fail(ErrorKind::kInvalidArgument, "quantizer step must be finite and positive");
  }
}

Vector quantize(const Vector& y, const QuantizerSpec& q) {
  const double step = q.step();
  return y.unaryExpr([step](double v) { return step * std::round(v / step); });
}

std::string_view to_string(NoiseModel model) {
  return model == NoiseModel::kRounding ? "rounding" : "subtractive_dither";
}

NoiseModel parse_noise_model(std::string_view text) {
  if (text == "rounding") return NoiseModel::kRounding;
  if (text == "subtractive_dither" || text == "dither") return NoiseModel::kSubtractiveDither;
  fail(ErrorKind::kParse, "unknown noise model '" + std::string(text) + "'");
}

Vector quantize_dithered(const Vector& y, const Vector& dither, const QuantizerSpec& q) {
  if (dither.size() != y.size()) fail(ErrorKind::kSizeMismatch, "dither length differs from signal length");
  return quantize(y + dither, q) - dither;
}

}  // namespace rfturbo
