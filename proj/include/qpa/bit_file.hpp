#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "qpa/bit_vector.hpp"

namespace qpa {

// On-disk container for raw keys, seeds and final keys.
//
//   offset  size  field
//   0       4     magic "QPA1"
//   4       2     format version, u16le = 1
//   6       1     role (0 raw key, 1 seed, 2 final key)
//   7       1     reserved, 0
//   8       8     bit length, u64le
//   16      ...   ceil(length / 8) payload bytes, LSB-first, pad bits zero
enum class BitRole : std::uint8_t { raw_key = 0, seed = 1, final_key = 2 };

inline constexpr std::uint16_t kBitFileVersion = 1;
inline constexpr std::size_t kBitFileHeaderBytes = 16;

const char* to_string(BitRole role) noexcept;

struct BitFile {
  BitRole role = BitRole::raw_key;
  BitVector bits;
};

void write_bits(std::ostream& out, const BitVector& bits, BitRole role);
void write_bits(const std::filesystem::path& path, const BitVector& bits,
                BitRole role);

// Throws FormatError on bad magic/version/reserved byte, truncation,
// trailing bytes, nonzero pad bits, or when `expected_role` /
// `expected_length` are given and differ from the header.
BitFile read_bit_file(std::istream& in,
                      std::optional<BitRole> expected_role = std::nullopt,
                      std::optional<std::size_t> expected_length = std::nullopt);
BitFile read_bit_file(const std::filesystem::path& path,
                      std::optional<BitRole> expected_role = std::nullopt,
                      std::optional<std::size_t> expected_length = std::nullopt);

inline BitVector read_bits(std::istream& in, BitRole role,
                           std::optional<std::size_t> expected_length) {
  return read_bit_file(in, role, expected_length).bits;
}

}  // namespace qpa
