// SPDX-License-Identifier: Apache-2.0

#include "rfturbo/interleaver.hpp"

#include <algorithm>
#include <random>
#include <utility>

#include "rfturbo/error.hpp"

namespace rfturbo {

Permutation::Permutation(std::vector<Index> map) : map_(std::move(map)) {
  std::vector<bool> seen(map_.size(), false);
  for (Index target : map_) {
    if (target >= map_.size() || seen[target]) {
      fail(ErrorKind::kInvalidArgument, "permutation map is not a bijection on [0, " +
                                            std::to_string(map_.size()) + ")");
    }
    seen[target] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Index> map(n);
  for (Index i = 0; i < n; ++i) map[i] = i;
  return Permutation(std::move(map));
}

Permutation Permutation::inverse() const {
  std::vector<Index> inv(map_.size());
  for (Index i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.size() != size()) fail(ErrorKind::kSizeMismatch, "composing permutations of different sizes");
  std::vector<Index> out(size());
  for (Index i = 0; i < size(); ++i) out[i] = map_[other.map_[i]];
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const { return fixed_points() == size(); }

std::size_t Permutation::fixed_points() const {
  std::size_t count = 0;
  for (Index i = 0; i < map_.size(); ++i) count += map_[i] == i ? 1 : 0;
  return count;
}

Permutation half_shift(std::size_t n) {
  if (n % 2 != 0) fail(ErrorKind::kOddSize, "half_shift needs even N, got " + std::to_string(n));
  std::vector<Index> map(n);
  for (Index i = 0; i < n; ++i) map[i] = (i + n / 2) % n;
  return Permutation(std::move(map));
}

namespace {

// Unbiased draw from [0, bound] by rejection; std::uniform_int_distribution
// is implementation-defined and would tie seeds to one standard library.
std::uint64_t draw_upto(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t range = bound + 1;
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    const std::uint64_t v = gen();
    if (v >= threshold) return v % range;
  }
}

}  // namespace

Permutation random_perm(std::size_t n, std::uint64_t seed) {
  std::vector<Index> map(n);
  for (Index i = 0; i < n; ++i) map[i] = i;
  std::mt19937_64 gen(seed);
  for (Index i = n; i > 1; --i) {
    const auto j = static_cast<Index>(draw_upto(gen, i - 1));
    std::swap(map[i - 1], map[j]);
  }
  return Permutation(std::move(map));
}

Matrix permute_rows(const Matrix& t, const Permutation& p) {
  if (static_cast<std::size_t>(t.rows()) != p.size()) {
    fail(ErrorKind::kSizeMismatch, "matrix has " + std::to_string(t.rows()) +
                                       " rows, permutation size " + std::to_string(p.size()));
  }
  Matrix out(t.rows(), t.cols());
  for (Index i = 0; i < p.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = t.row(static_cast<Eigen::Index>(p[i]));
  }
  return out;
}

std::vector<std::size_t> cycle_lengths(const Permutation& p) {
  std::vector<bool> visited(p.size(), false);
  std::vector<std::size_t> lengths;
  for (Index start = 0; start < p.size(); ++start) {
    if (visited[start]) continue;
    std::size_t len = 0;
    for (Index i = start; !visited[i]; i = p[i]) {
      visited[i] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::string_view to_string(PermKind kind) {
  switch (kind) {
    case PermKind::kIdentity: return "identity";
    case PermKind::kHalfShift: return "half_shift";
    case PermKind::kRandom: return "random";
  }
  return "unknown";
}

PermKind parse_perm_kind(std::string_view text) {
  if (text == "identity") return PermKind::kIdentity;
  if (text == "half_shift") return PermKind::kHalfShift;
  if (text == "random") return PermKind::kRandom;
  fail(ErrorKind::kParse, "unknown permutation kind '" + std::string(text) + "'");
}

Permutation make_permutation(PermKind kind, std::size_t n, std::uint64_t seed) {
  switch (kind) {
    case PermKind::kIdentity: return Permutation::identity(n);
    case PermKind::kHalfShift: return half_shift(n);
    case PermKind::kRandom: return random_perm(n, seed);
  }
  fail(ErrorKind::kInvalidArgument, "unknown permutation kind");
}

}  // namespace rfturbo
