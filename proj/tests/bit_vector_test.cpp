#include "qpa/bit_vector.hpp"

#include <gtest/gtest.h>

#include <random>

#include "qpa/errors.hpp"
#include "support/reference.hpp"

namespace qpa {
namespace {

TEST(BitVectorTest, LsbFirstWithinWords) {
  BitVector v(130);
  v.set(0, true);
  v.set(65, true);
  v.set(129, true);
  ASSERT_EQ(v.word_count(), 3u);
  EXPECT_EQ(v.words()[0], 1u);
  EXPECT_EQ(v.words()[1], 2u);
  EXPECT_EQ(v.words()[2], 2u);
  EXPECT_TRUE(v.pad_bits_clear());
}

TEST(BitVectorTest, FromStringRoundTrips) {
  const auto v = BitVector::from_string("10110101");
  EXPECT_TRUE(v.get(0));
  EXPECT_FALSE(v.get(1));
  EXPECT_TRUE(v.get(7));
  EXPECT_EQ(v.to_string(), "10110101");
  EXPECT_THROW(BitVector::from_string("10x"), FormatError);
}

TEST(BitVectorTest, FromWordsRejectsPadBits) {
  EXPECT_THROW(BitVector::from_words({0x100}, 8), FormatError);
  EXPECT_THROW(BitVector::from_words({0, 0}, 8), DimensionError);
  EXPECT_NO_THROW(BitVector::from_words({0xFF}, 8));
}

TEST(BitVectorTest, Extract64MatchesPerBitReads) {
  std::mt19937_64 rng(7);
  const auto v = testing::random_bits(301, rng);
  for (std::size_t offset : {0u, 1u, 63u, 64u, 100u, 250u, 300u, 301u, 400u}) {
    const auto word = v.extract64(offset);
    for (std::size_t b = 0; b < 64; ++b) {
      const bool expected = offset + b < v.size() && v.get(offset + b);
      ASSERT_EQ(((word >> b) & 1U) != 0, expected) << offset << "+" << b;
    }
  }
}

TEST(BitVectorTest, PadInvariantAfterXorSliceOnes) {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 63u, 64u, 65u, 1000u}) {
    auto a = testing::random_bits(n, rng);
    const auto b = testing::random_bits(n, rng);
    a ^= b;
    EXPECT_TRUE(a.pad_bits_clear());
    EXPECT_EQ(a.size(), n);
    for (std::size_t begin = 0; begin < n; begin += 17) {
      const auto s = a.slice(begin, n - begin);
      ASSERT_TRUE(s.pad_bits_clear());
      ASSERT_EQ(s.size(), n - begin);
      for (std::size_t i = 0; i < s.size(); ++i) ASSERT_EQ(s.get(i), a.get(begin + i));
    }
    const auto ones = BitVector::ones(n);
    EXPECT_TRUE(ones.pad_bits_clear());
    EXPECT_EQ(ones.popcount(), n);
  }
}

TEST(BitVectorTest, ErrorsOnMismatchedXorAndBadSlice) {
  BitVector a(10);
  BitVector b(11);
  EXPECT_THROW(a ^= b, DimensionError);
  EXPECT_THROW(a.slice(5, 6), DimensionError);
  EXPECT_NO_THROW(a.slice(10, 0));
}

}  // namespace
}  // namespace qpa
