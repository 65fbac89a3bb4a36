#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "caw/lifting.hpp"
#include "test_support.hpp"

using namespace caw;

TEST(Lifting, ConstantSignal) {
  const std::vector<double> s = {5, 5, 5, 5};
  const SubbandPair b = forward_lwt(s);
  EXPECT_EQ(b.approx, (std::vector<double>{5, 5}));
  EXPECT_EQ(b.detail, (std::vector<double>{0, 0}));
  EXPECT_FALSE(b.padded);
  EXPECT_EQ(inverse_lwt(b), s);
}

TEST(Lifting, LinearRampByHand) {
  const std::vector<double> s = {1, 2, 3, 4, 5, 6};
  const SubbandPair b = forward_lwt(s);
  EXPECT_EQ(b.detail, (std::vector<double>{0, 0, 1}));
  EXPECT_EQ(b.approx, (std::vector<double>{1, 3, 5.25}));

  SubbandPair given{{1, 3, 5.25}, {0, 0, 1}, 6, false};
  EXPECT_EQ(inverse_lwt(given), s);
}

TEST(Lifting, OddLengthIsPaddedAndTruncated) {
  const std::vector<double> s = {1, 2, 3};
  const SubbandPair b = forward_lwt(s);
  EXPECT_TRUE(b.padded);
  EXPECT_EQ(b.original_len, 3u);
  const SubbandPair ref = forward_lwt(std::vector<double>{1, 2, 3, 3});
  EXPECT_EQ(b.approx, ref.approx);
  EXPECT_EQ(b.detail, ref.detail);
  EXPECT_EQ(inverse_lwt(b), s);
}

TEST(Lifting, Errors) {
  EXPECT_THROW(forward_lwt(std::vector<double>{}), Error);
  EXPECT_THROW(forward_lwt(std::vector<double>{1.0}), Error);
  EXPECT_THROW(forward_lwt(std::vector<double>{1.0, std::numeric_limits<double>::infinity()}), Error);
  try {
    inverse_lwt(SubbandPair{{1, 2}, {1}, 3, true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::length_mismatch);
  }
  EXPECT_THROW(inverse_lwt(SubbandPair{{1}, {std::nan("")}, 2, false}), Error);
}

// PCM16-grid samples keep every lifting intermediate a short dyadic
// rational, so both directions are exact and the round trip is bitwise.
TEST(Lifting, PerfectReconstructionOnPcmGrid) {
  std::mt19937_64 rng(21);
  for (std::size_t n : {2u, 3u, 4u, 5u, 17u, 1000u, 100000u, 99999u}) {
    const auto s = caw::testing::random_pcm_signal(rng, n);
    const auto back = inverse_lwt(forward_lwt(s));
    ASSERT_EQ(back.size(), n);
    EXPECT_EQ(back, s) << "n=" << n;
  }
}

// Arbitrary reals: (a + q) - q need not round back to a, so only a
// few-ulp reconstruction is guaranteed.
TEST(Lifting, NearPerfectReconstructionOnArbitraryReals) {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> s(100000);
  for (auto& v : s) v = u(rng);
  const auto back = inverse_lwt(forward_lwt(s));
  double worst = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::fabs(back[i] - s[i]));
  EXPECT_LT(worst, 1e-15);
}

TEST(Lifting, LinearRampCancelsInteriorDetail) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> coef(-1000, 1000);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = coef(rng) / 16.0 + 0.5;
    const double b = coef(rng) / 8.0;
    std::vector<double> s(2 * (2 + rng() % 500));
    for (std::size_t n = 0; n < s.size(); ++n) s[n] = a * static_cast<double>(n) + b;
    const SubbandPair bands = forward_lwt(s);
    for (std::size_t i = 0; i + 1 < bands.detail.size(); ++i) ASSERT_EQ(bands.detail[i], 0.0);
  }
}

TEST(Lifting, LengthBookkeeping) {
  std::mt19937_64 rng(24);
  for (std::size_t n = 2; n < 40; ++n) {
    const auto s = caw::testing::random_pcm_signal(rng, n);
    const SubbandPair b = forward_lwt(s);
    EXPECT_EQ(b.approx.size(), (n + 1) / 2);
    EXPECT_EQ(b.detail.size(), (n + 1) / 2);
    EXPECT_EQ(inverse_lwt(b).size(), n);
  }
}
