#include "qpa/seed.hpp"

#include <sodium.h>

#include <string>
#include <vector>

#include "qpa/errors.hpp"

namespace qpa {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// The seed itself works for any block length; transform-length checks are
// left to the pipeline.
void require_seedable_length(std::size_t n) {
  if (n < 2) {
    throw ParameterError("block length n=" + std::to_string(n) +
                         " leaves no Toeplitz block");
  }
}

}  // namespace

MasterSecret parse_master_secret(std::string_view hex) {
  MasterSecret out{};
  if (hex.size() != 2 * out.size()) {
    throw ParameterError("master secret must be 64 hex digits, got " +
                         std::to_string(hex.size()));
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = hex_value(hex[2 * i]);
    const int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) {
      throw ParameterError("master secret contains a non-hex character");
    }
    out[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return out;
}

ToeplitzSeed::ToeplitzSeed(BitVector bits, std::size_t n)
    : bits_(std::move(bits)), n_(n) {
  require_seedable_length(n);
  if (bits_.size() != n - 1) {
    throw DimensionError("Toeplitz seed for n=" + std::to_string(n) +
                         " needs " + std::to_string(n - 1) + " bits, got " +
                         std::to_string(bits_.size()));
  }
}

ToeplitzSeed ToeplitzSeed::zeros(std::size_t n) {
  require_seedable_length(n);
  return ToeplitzSeed(BitVector(n - 1), n);
}

ToeplitzSeed generate_seed(const MasterSecret& master_secret, std::size_t n) {
  require_seedable_length(n);
  if (sodium_init() < 0) {
    throw Error("libsodium initialisation failed");
  }
  std::array<unsigned char, crypto_stream_chacha20_ietf_NONCEBYTES> nonce{
      'Q', 'P', 'A', 'S'};
  for (std::size_t b = 0; b < 8; ++b) {
    nonce[4 + b] = static_cast<unsigned char>((std::uint64_t{n} >> (8 * b)) & 0xFF);
  }

  const std::size_t bits = n - 1;
  std::vector<BitVector::Word> words((bits + 63) / 64, 0);
  std::vector<unsigned char> stream(words.size() * 8);
  crypto_stream_chacha20_ietf(stream.data(), stream.size(), nonce.data(),
                              master_secret.data());
  for (std::size_t w = 0; w < words.size(); ++w) {
    BitVector::Word word = 0;
    for (std::size_t b = 0; b < 8; ++b) {
      word |= BitVector::Word{stream[8 * w + b]} << (8 * b);
    }
    words[w] = word;
  }
  sodium_memzero(stream.data(), stream.size());
  if (bits % 64 != 0) words.back() &= (BitVector::Word{1} << (bits % 64)) - 1;
  return ToeplitzSeed(BitVector::from_words(std::move(words), bits), n);
}

}  // namespace qpa
