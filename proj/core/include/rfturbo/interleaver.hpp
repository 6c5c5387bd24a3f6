// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rfturbo/numerics.hpp"

namespace rfturbo {

// A bijection on [0, N); map()[i] = pi(i). 0-based throughout.
class Permutation {
 public:
  Permutation() = default;
  // Throws kInvalidArgument if `map` is not a bijection on [0, size).
  explicit Permutation(std::vector<Index> map);

  static Permutation identity(std::size_t n);

  std::size_t size() const { return map_.size(); }
  Index operator[](Index i) const { return map_[i]; }
  const std::vector<Index>& map() const { return map_; }

  Permutation inverse() const;
  // (this * other)(i) = this(other(i))
  Permutation compose(const Permutation& other) const;
  bool is_identity() const;
  std::size_t fixed_points() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Index> map_;
};

// pi(i) = i + N/2 mod N. Throws kOddSize for odd N.
Permutation half_shift(std::size_t n);

// Uniform permutation from a seeded Fisher-Yates shuffle. The generator and
// the bounded draw are fixed here so a seed names the same permutation on
// every platform.
Permutation random_perm(std::size_t n, std::uint64_t seed);

// Row i of the result is row p[i] of `t`. Throws kSizeMismatch.
Matrix permute_rows(const Matrix& t, const Permutation& p);

// Cycle type, sorted ascending; sums to N.
std::vector<std::size_t> cycle_lengths(const Permutation& p);

enum class PermKind { kIdentity, kHalfShift, kRandom };

std::string_view to_string(PermKind kind);
PermKind parse_perm_kind(std::string_view text);

Permutation make_permutation(PermKind kind, std::size_t n, std::uint64_t seed = 0);

}  // namespace rfturbo
