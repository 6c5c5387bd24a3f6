// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rfturbo/rfturbo.hpp"

namespace rfturbo {
namespace {

using Idx = std::vector<Index>;

TEST(ErasurePattern, Validation) {
  EXPECT_NO_THROW(ErasurePattern(4, {0, 4}, true));
  EXPECT_THROW(ErasurePattern(4, {0}, true), Error);     // not closed under pairing
  EXPECT_THROW(ErasurePattern(4, {8}, false), Error);    // out of range
  EXPECT_THROW(ErasurePattern(4, {1, 1}, false), Error); // duplicate
  const ErasurePattern p(4, {5, 0, 2}, false);
  EXPECT_EQ(p.lost(), (Idx{0, 2, 5}));
  EXPECT_FALSE(p.closed_under_pairing());
  EXPECT_TRUE(p.is_lost(5));
  EXPECT_FALSE(p.is_lost(4));
  EXPECT_EQ(p.survivors(), (Idx{1, 3, 4, 6, 7}));
  EXPECT_EQ(p.codeword_length(), 8u);
  EXPECT_TRUE(ErasurePattern::none(3).lost().empty());
}

TEST(PairedBurst, Examples) {
  EXPECT_EQ(paired_burst(4, 0, 2).lost(), (Idx{0, 1, 4, 5}));
  EXPECT_EQ(paired_burst(4, 0, 4).lost().size(), 8u);
  EXPECT_EQ(paired_burst(4, 3, 2).lost(), (Idx{0, 3, 4, 7}));
  EXPECT_TRUE(paired_burst(6, 5, 3).paired());
  EXPECT_TRUE(paired_burst(6, 5, 3).closed_under_pairing());
  for (auto [s, p] : {std::pair<Index, std::size_t>{4, 1}, {0, 0}, {0, 5}}) {
    try {
      paired_burst(4, s, p);
      FAIL() << s << "," << p;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::kBadRange);
    }
  }
}

TEST(ContiguousBurst, Wraps) {
  EXPECT_EQ(contiguous_burst(4, 6, 3).lost(), (Idx{0, 6, 7}));
  EXPECT_FALSE(contiguous_burst(4, 6, 3).paired());
}

TEST(RandomErasures, Examples) {
  EXPECT_TRUE(random_erasures(4, 0, false, 1).lost().empty());
  const auto p = random_erasures(4, 2, true, 7);
  EXPECT_EQ(p.lost().size(), 4u);
  EXPECT_TRUE(p.closed_under_pairing());
  EXPECT_EQ(p.lost(), (Idx{1, 2, 5, 6}));  // frozen draw
  EXPECT_EQ(random_erasures(10, 5, false, 3), random_erasures(10, 5, false, 3));
  EXPECT_EQ(random_erasures(10, 5, false, 3).lost().size(), 5u);
  try {
    random_erasures(4, 5, true, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBadCount);
  }
  EXPECT_THROW(random_erasures(4, 9, false, 1), Error);
}

TEST(ApplyErasure, Examples) {
  const Vector y = (Vector(8) << 10, 11, 12, 13, 14, 15, 16, 17).finished();
  auto s = apply_erasure(y, ErasurePattern::none(4));
  EXPECT_EQ(s.indices.size(), 8u);
  EXPECT_EQ(s.values, y);
  s = apply_erasure(y, paired_burst(4, 0, 4));
  EXPECT_TRUE(s.indices.empty());
  EXPECT_EQ(s.values.size(), 0);
  s = apply_erasure(y, paired_burst(4, 0, 2));
  EXPECT_EQ(s.indices, (Idx{2, 3, 6, 7}));
  EXPECT_EQ(s.values, (Vector(4) << 12, 13, 16, 17).finished());
  try {
    apply_erasure(Vector::Zero(6), paired_burst(4, 0, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSizeMismatch);
  }
}

TEST(Quantizer, Examples) {
  EXPECT_EQ(quantize((Vector(2) << 0.4, 0.6).finished(), QuantizerSpec(1.0)), (Vector(2) << 0, 1).finished());
  EXPECT_THROW(QuantizerSpec(0.0), Error);
  EXPECT_THROW(QuantizerSpec(-1.0), Error);
  const QuantizerSpec q(0.25);
  EXPECT_NEAR(q.variance(), 0.0625 / 12.0, 1e-15);
  EXPECT_EQ(quantize(Vector::Zero(3), q), Vector::Zero(3));
}

TEST(Quantizer, ErrorBoundIdempotenceAndVariance) {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const QuantizerSpec q(1.0 / 64.0);
  Vector y(1000000);
  for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = u(gen);
  const Vector yq = quantize(y, q);
  EXPECT_LE((yq - y).cwiseAbs().maxCoeff(), q.step() / 2 + 1e-15);
  EXPECT_EQ(quantize(yq, q), yq);
  const double var = (yq - y).squaredNorm() / static_cast<double>(y.size());
  EXPECT_NEAR(var / q.variance(), 1.0, 0.02);
}

TEST(Quantizer, DitherMakesCopiesIndependent) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> half(-0.5, 0.5);
  const QuantizerSpec q(1.0 / 32.0);
  constexpr Eigen::Index kN = 200000;
  Vector y(kN), d1(kN), d2(kN);
  for (Eigen::Index i = 0; i < kN; ++i) {
    y(i) = u(gen);
    d1(i) = half(gen) * q.step();
    d2(i) = half(gen) * q.step();
  }
  const Vector e1 = quantize_dithered(y, d1, q) - y;
  const Vector e2 = quantize_dithered(y, d2, q) - y;
  const Vector r = quantize(y, q) - y;
  EXPECT_NEAR(e1.squaredNorm() / kN / q.variance(), 1.0, 0.02);
  // Same sample, plain rounding: errors identical. Dithered: uncorrelated.
  EXPECT_EQ(r, quantize(y, q) - y);
  EXPECT_LT(std::abs(e1.dot(e2)) / kN / q.variance(), 0.02);
  EXPECT_THROW(quantize_dithered(y, Vector::Zero(3), q), Error);
  EXPECT_EQ(parse_noise_model("dither"), NoiseModel::kSubtractiveDither);
  EXPECT_EQ(parse_noise_model(to_string(NoiseModel::kRounding)), NoiseModel::kRounding);
  EXPECT_THROW(parse_noise_model("gaussian"), Error);
}

}  // namespace
}  // namespace rfturbo
