#include "qpa/fft.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "qpa/errors.hpp"
#include "qpa/params.hpp"
#include "support/reference.hpp"

namespace qpa::fft {
namespace {

using qpa::testing::max_abs_diff;
using qpa::testing::naive_dft;
using qpa::testing::random_complex;

double energy(std::span<const Complex> x) {
  double e = 0;
  for (const auto& c : x) e += std::norm(c);
  return e;
}

TEST(FftSmallTest, ImpulseGivesFlatSpectrum) {
  ComplexBuffer x(16, Complex{});
  x[0] = 1.0;
  for (const auto& c : fft_small(x, Direction::forward)) {
    EXPECT_EQ(c, Complex(1.0, 0.0));
  }
}

TEST(FftSmallTest, OnesGiveDcOnly) {
  const auto y = fft_small(ComplexBuffer(8, Complex{1.0, 0.0}), Direction::forward);
  EXPECT_NEAR(y[0].real(), 8.0, 1e-15);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_LT(std::abs(y[i]), 1e-14);
}

TEST(FftSmallTest, MatchesNaiveDftBothDirections) {
  std::mt19937_64 rng(1);
  for (std::size_t m = kMinSmallSize; m <= 1024; m *= 2) {
    const auto x = random_complex(m, rng);
    EXPECT_LT(max_abs_diff(fft_small(x, Direction::forward), naive_dft(x)), 1e-10) << m;
    EXPECT_LT(max_abs_diff(fft_small(x, Direction::inverse), naive_dft(x, true)), 1e-10) << m;
  }
}

TEST(FftSmallTest, RejectsUnsupportedLengths) {
  EXPECT_THROW(fft_small(ComplexBuffer(4), Direction::forward), ParameterError);
  EXPECT_THROW(fft_small(ComplexBuffer(12), Direction::forward), ParameterError);
  EXPECT_THROW(fft_small(ComplexBuffer(8192), Direction::forward), ParameterError);
  EXPECT_NO_THROW(fft_small(ComplexBuffer(4096), Direction::forward));
}

TEST(TwiddleTableTest, UnitModulusAndPeriodicity) {
  for (std::size_t n : {64u, 4096u, 1u << 20}) {
    const TwiddleTable tw(n);
    const double eps = std::numeric_limits<double>::epsilon();
    for (auto span : {tw.coarse(), tw.fine()}) {
      for (const auto& w : span) ASSERT_LE(std::abs(std::abs(w) - 1.0), 4 * eps);
    }
    EXPECT_EQ(tw.power(n), tw.power(0));
    EXPECT_EQ(tw.power(0), Complex(1.0, 0.0));
    EXPECT_EQ(tw.power(n + 5), tw.power(5));
    for (std::size_t p : {std::size_t{1}, n / 4, n / 2, n - 1}) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(n);
      EXPECT_LT(std::abs(tw.power(p) - std::polar(1.0, angle)), 1e-15) << n << " " << p;
    }
  }
}

TEST(MatrixLayoutTest, DigitTransposeIsInvolution) {
  const MatrixLayout layout(32);
  for (std::size_t p = 0; p < layout.length(); ++p) {
    ASSERT_EQ(layout.digit_transpose(layout.digit_transpose(p)), p);
  }
  EXPECT_EQ(layout.digit_transpose(1), 32u);
  EXPECT_EQ(layout.digit_transpose(33), 33u);
}

TEST(Fft2dNaturalTest, MatchesNaiveDft) {
  std::mt19937_64 rng(2);
  for (std::size_t n : {64u, 256u, 1024u}) {
    const auto x = random_complex(n, rng);
    EXPECT_LT(max_abs_diff(fft2d_natural(x, Direction::forward), naive_dft(x)), 1e-9) << n;
    EXPECT_LT(max_abs_diff(fft2d_natural(x, Direction::inverse), naive_dft(x, true)), 1e-9) << n;
  }
}

TEST(Fft2dNaturalTest, ImpulseAndRoundTrip) {
  ComplexBuffer delta(256, Complex{});
  delta[0] = 1.0;
  for (const auto& c : fft2d_natural(delta, Direction::forward)) {
    ASSERT_LT(std::abs(c - Complex(1.0, 0.0)), 1e-15);
  }
  std::mt19937_64 rng(3);
  for (std::size_t n : {64u, 4096u, 65536u}) {
    const auto x = random_complex(n, rng);
    auto y = fft2d_natural(fft2d_natural(x, Direction::forward), Direction::inverse);
    for (auto& c : y) c /= static_cast<double>(n);
    EXPECT_LT(max_abs_diff(y, x), 1e-9) << n;
  }
}

TEST(Fft2dPermutedTest, PermutationIdentity) {
  std::mt19937_64 rng(4);
  for (std::size_t n : {64u, 1024u, 4096u}) {
    const std::size_t k = side_length(n);
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_complex(n, rng);
      for (auto dir : {Direction::forward, Direction::inverse}) {
        const auto expected = qpa::testing::digit_transpose(
            fft2d_natural(qpa::testing::digit_transpose(x, k), dir), k);
        ASSERT_LT(max_abs_diff(fft2d_permuted(x, dir), expected), 1e-9) << n;
      }
    }
  }
}

TEST(Fft2dPermutedTest, ImpulseAndConstant) {
  ComplexBuffer delta(1024, Complex{});
  delta[0] = 1.0;
  for (const auto& c : fft2d_permuted(delta, Direction::forward)) {
    ASSERT_LT(std::abs(c - Complex(1.0, 0.0)), 1e-15);
  }
  const auto y = fft2d_permuted(ComplexBuffer(1024, Complex{1.0, 0.0}), Direction::forward);
  EXPECT_NEAR(y[0].real(), 1024.0, 1e-9);
  for (std::size_t i = 1; i < y.size(); ++i) ASSERT_LT(std::abs(y[i]), 1e-9);
}

TEST(Fft2dTest, ParsevalAndLinearityBothVariants) {
  std::mt19937_64 rng(5);
  for (Variant variant : {Variant::natural, Variant::permuted}) {
    for (std::size_t n : {256u, 4096u}) {
      const auto x = random_complex(n, rng);
      const auto y = random_complex(n, rng);
      ComplexBuffer fx = x;
      ComplexBuffer fy = y;
      fft2d_in_place(variant, fx, Direction::forward);
      fft2d_in_place(variant, fy, Direction::forward);
      EXPECT_NEAR(energy(fx) / static_cast<double>(n) / energy(x), 1.0, 1e-9);

      const Complex alpha{0.3, -1.2};
      const Complex beta{-2.0, 0.5};
      ComplexBuffer combo(n);
      for (std::size_t i = 0; i < n; ++i) combo[i] = alpha * x[i] + beta * y[i];
      fft2d_in_place(variant, combo, Direction::forward);
      double worst = 0;
      double scale = 0;
      for (std::size_t i = 0; i < n; ++i) {
        worst = std::max(worst, std::abs(combo[i] - (alpha * fx[i] + beta * fy[i])));
        scale = std::max(scale, std::abs(combo[i]));
      }
      EXPECT_LT(worst / scale, 1e-9);
    }
  }
}

TEST(Fft2dTest, ParallelMatchesSerialBitExactly) {
  std::mt19937_64 rng(6);
  const auto x = random_complex(65536, rng);
  for (Variant variant : {Variant::natural, Variant::permuted}) {
    ComplexBuffer a = x;
    ComplexBuffer b = x;
    fft2d_in_place(variant, a, Direction::forward, nullptr, Execution::parallel);
    fft2d_in_place(variant, b, Direction::forward, nullptr, Execution::serial);
    ASSERT_EQ(a, b);
  }
}

TEST(Fft2dTest, RejectsUnsupportedLength) {
  EXPECT_THROW(fft2d_natural(ComplexBuffer(128), Direction::forward), ParameterError);
  EXPECT_THROW(fft2d_permuted(ComplexBuffer(100), Direction::forward), ParameterError);
}

TEST(TransposeCountTest, SixVersusTwo) {
  EXPECT_EQ(count_transposes(Variant::natural), 6u);
  EXPECT_EQ(count_transposes(Variant::permuted), 2u);
  TransformStats stats;
  fft2d_natural(ComplexBuffer(64), Direction::forward, &stats);
  EXPECT_EQ(stats.transposes, 3u);
  EXPECT_EQ(stats.row_transforms, 16u);
  EXPECT_EQ(stats.twiddle_passes, 1u);
}

}  // namespace
}  // namespace qpa::fft
