#include "qpa/seed.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qpa/errors.hpp"

namespace qpa {
namespace {

MasterSecret secret_from(std::uint64_t x) {
  std::mt19937_64 rng(x);
  MasterSecret s{};
  for (auto& b : s) b = static_cast<std::uint8_t>(rng());
  return s;
}

TEST(GenerateSeedTest, Deterministic) {
  const auto secret = secret_from(1);
  EXPECT_EQ(generate_seed(secret, 4096).bits(), generate_seed(secret, 4096).bits());
}

TEST(GenerateSeedTest, LengthIsNMinusOne) {
  const auto seed = generate_seed(secret_from(2), 65);
  EXPECT_EQ(seed.bits().size(), 64u);
  EXPECT_EQ(seed.block_length(), 65u);
  EXPECT_EQ(generate_seed(secret_from(2), 1u << 20).bits().size(), (1u << 20) - 1);
  EXPECT_TRUE(generate_seed(secret_from(2), 100).bits().pad_bits_clear());
}

TEST(GenerateSeedTest, BlockLengthSelectsIndependentStream) {
  const auto secret = secret_from(3);
  const auto a = generate_seed(secret, 4096).bits().slice(0, 64);
  const auto b = generate_seed(secret, 1024).bits().slice(0, 64);
  EXPECT_NE(a, b);
}

TEST(GenerateSeedTest, DifferentSecretsDifferInHalfTheBits) {
  // Hamming distance of independent uniform strings is Binomial(n-1, 1/2).
  const std::size_t n = 4096;
  const double mean = (n - 1) / 2.0;
  const double sigma = std::sqrt((n - 1) / 4.0);
  for (std::uint64_t pair = 0; pair < 100; ++pair) {
    const auto a = generate_seed(secret_from(1000 + 2 * pair), n).bits();
    const auto b = generate_seed(secret_from(1001 + 2 * pair), n).bits();
    const double distance = static_cast<double>((a ^ b).popcount());
    ASSERT_LT(std::abs(distance - mean), 5 * sigma) << "pair " << pair;
  }
}

TEST(GenerateSeedTest, RejectsDegenerateLength) {
  EXPECT_THROW(generate_seed(secret_from(4), 1), ParameterError);
}

TEST(ToeplitzSeedTest, LengthContract) {
  EXPECT_THROW(ToeplitzSeed(BitVector(64), 64), DimensionError);
  EXPECT_NO_THROW(ToeplitzSeed(BitVector(63), 64));
  EXPECT_EQ(ToeplitzSeed::zeros(64).bits().popcount(), 0u);
}

TEST(ParseMasterSecretTest, HexDigits) {
  const auto s = parse_master_secret(
      "00ff10Ab00000000000000000000000000000000000000000000000000000001");
  EXPECT_EQ(s[0], 0x00);
  EXPECT_EQ(s[1], 0xFF);
  EXPECT_EQ(s[2], 0x10);
  EXPECT_EQ(s[3], 0xAB);
  EXPECT_EQ(s[31], 0x01);
  EXPECT_THROW(parse_master_secret("abc"), ParameterError);
  EXPECT_THROW(
      parse_master_secret("zz00000000000000000000000000000000000000000000000000000000000000"),
      ParameterError);
}

}  // namespace
}  // namespace qpa
