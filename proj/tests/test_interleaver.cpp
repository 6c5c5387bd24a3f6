// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "rfturbo/rfturbo.hpp"

namespace rfturbo {
namespace {

using Map = std::vector<Index>;

TEST(Permutation, RejectsNonBijection) {
  EXPECT_THROW(Permutation(Map{0, 0}), Error);
  EXPECT_THROW(Permutation(Map{0, 2}), Error);
  EXPECT_NO_THROW(Permutation(Map{}));
}

TEST(Permutation, Algebra) {
  const Permutation p(Map{2, 0, 3, 1});
  EXPECT_EQ(p.inverse().map(), (Map{1, 3, 0, 2}));
  EXPECT_TRUE(p.compose(p.inverse()).is_identity());
  EXPECT_TRUE(p.inverse().compose(p).is_identity());
  // compose(other)[i] = this[other[i]]
  const Permutation q(Map{1, 0, 2, 3});
  EXPECT_EQ(p.compose(q).map(), (Map{0, 2, 3, 1}));
  EXPECT_EQ(Permutation::identity(3).fixed_points(), 3u);
  EXPECT_EQ(p.fixed_points(), 0u);
}

TEST(HalfShift, Examples) {
  EXPECT_EQ(half_shift(4).map(), (Map{2, 3, 0, 1}));
  EXPECT_EQ(half_shift(6).map(), (Map{3, 4, 5, 0, 1, 2}));
  for (std::size_t n = 2; n <= 40; n += 2) {
    const auto h = half_shift(n);
    EXPECT_TRUE(h.compose(h).is_identity());
    EXPECT_EQ(h.fixed_points(), 0u);
    EXPECT_EQ(cycle_lengths(h), std::vector<std::size_t>(n / 2, 2));
  }
  try {
    half_shift(5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kOddSize);
  }
}

TEST(RandomPerm, Deterministic) {
  EXPECT_EQ(random_perm(150, 42), random_perm(150, 42));
  EXPECT_NE(random_perm(150, 42), random_perm(150, 43));
  EXPECT_TRUE(random_perm(1, 9).is_identity());
  EXPECT_EQ(random_perm(0, 1).size(), 0u);
  // Frozen draw: guards the generator against silent changes.
  EXPECT_EQ(random_perm(8, 1).map(), (Map{4, 6, 3, 5, 1, 7, 2, 0}));
}

TEST(RandomPerm, FixedPointStatistics) {
  // Uniform permutations: fixed points ~ Poisson(1), mean 1, variance 1.
  constexpr int kSeeds = 1000;
  double sum = 0.0;
  for (int s = 0; s < kSeeds; ++s) sum += static_cast<double>(random_perm(150, static_cast<std::uint64_t>(s)).fixed_points());
  const double mean = sum / kSeeds;
  EXPECT_LE(std::abs(mean - 1.0), 3.0 / std::sqrt(static_cast<double>(kSeeds)));
}

TEST(RandomPerm, PositionsAreUniform) {
  // Chi-square on where element 0 lands, N = 5.
  constexpr int kSeeds = 20000;
  std::vector<int> counts(5, 0);
  for (int s = 0; s < kSeeds; ++s) ++counts[random_perm(5, static_cast<std::uint64_t>(s))[0]];
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - kSeeds / 5.0) * (c - kSeeds / 5.0) / (kSeeds / 5.0);
  EXPECT_LT(chi2, 18.47);  // 99.9% quantile, 4 dof
}

TEST(PermuteRows, Examples) {
  const Matrix i4 = Matrix::Identity(4, 4);
  const Matrix p = permute_rows(i4, half_shift(4));
  for (Index r = 0; r < 4; ++r) EXPECT_EQ(p.row(static_cast<Eigen::Index>(r)), i4.row(static_cast<Eigen::Index>((r + 2) % 4)));
  const Matrix ts = build_analysis_matrix(builtin_family(FilterFamily::kHaar), 8);
  EXPECT_EQ(permute_rows(ts, Permutation::identity(8)), ts);
  const auto rp = random_perm(8, 5);
  EXPECT_EQ(permute_rows(permute_rows(ts, rp), rp.inverse()), ts);
  try {
    permute_rows(ts, half_shift(4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSizeMismatch);
  }
}

TEST(PermuteRows, PreservesSingularValues) {
  std::mt19937_64 gen(3);
  const Matrix a = oracle::random_matrix(10, 6, gen);
  const Vector s1 = singular_values(a);
  const Vector s2 = singular_values(permute_rows(a, random_perm(10, 77)));
  EXPECT_LE((s1 - s2).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(CycleLengths, Examples) {
  EXPECT_EQ(cycle_lengths(Permutation::identity(5)), std::vector<std::size_t>(5, 1));
  EXPECT_EQ(cycle_lengths(half_shift(6)), (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(cycle_lengths(Permutation(Map{1, 2, 3, 4, 0})), (std::vector<std::size_t>{5}));
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto c = cycle_lengths(random_perm(37, s));
    EXPECT_EQ(std::accumulate(c.begin(), c.end(), std::size_t{0}), 37u);
  }
}

TEST(MakePermutation, Kinds) {
  EXPECT_TRUE(make_permutation(PermKind::kIdentity, 6).is_identity());
  EXPECT_EQ(make_permutation(PermKind::kHalfShift, 6), half_shift(6));
  EXPECT_EQ(make_permutation(PermKind::kRandom, 6, 3), random_perm(6, 3));
  EXPECT_EQ(parse_perm_kind("random"), PermKind::kRandom);
  EXPECT_EQ(parse_perm_kind(to_string(PermKind::kHalfShift)), PermKind::kHalfShift);
  EXPECT_THROW(parse_perm_kind("bitreverse"), Error);
}

}  // namespace
}  // namespace rfturbo
