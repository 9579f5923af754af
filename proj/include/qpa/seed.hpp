#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>

#include "qpa/bit_vector.hpp"

namespace qpa {

using MasterSecret = std::array<std::uint8_t, 32>;

// Parses 64 hex digits into a master secret; throws ParameterError.
MasterSecret parse_master_secret(std::string_view hex);

// The random string V_0 ... V_{n-2} that defines the Toeplitz block of the
// modified Toeplitz hash for block length n.
class ToeplitzSeed {
 public:
  ToeplitzSeed() = default;
  // Throws ParameterError for n < 2, DimensionError unless
  // bits.size() == n - 1.
  ToeplitzSeed(BitVector bits, std::size_t n);

  static ToeplitzSeed zeros(std::size_t n);

  std::size_t block_length() const noexcept { return n_; }
  const BitVector& bits() const noexcept { return bits_; }
  bool operator[](std::size_t k) const noexcept { return bits_.get(k); }

 private:
  BitVector bits_;
  std::size_t n_ = 0;
};

// Deterministic seed expansion: ChaCha20 (IETF variant) keyed with the
// master secret, nonce = "QPAS" || u64le(n), counter starting at 0. The
// first n-1 keystream bits, LSB-first per byte, become V_0 ... V_{n-2}.
ToeplitzSeed generate_seed(const MasterSecret& master_secret, std::size_t n);

}  // namespace qpa
