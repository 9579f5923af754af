#include "qpa/bit_file.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "qpa/errors.hpp"

namespace qpa {
namespace {

constexpr std::array<char, 4> kMagic{'Q', 'P', 'A', '1'};

void put_le(std::ostream& out, std::uint64_t value, int bytes) {
  for (int b = 0; b < bytes; ++b) {
    out.put(static_cast<char>((value >> (8 * b)) & 0xFF));
  }
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int b = 0; b < bytes; ++b) v |= std::uint64_t{p[b]} << (8 * b);
  return v;
}

}  // namespace

const char* to_string(BitRole role) noexcept {
  switch (role) {
    case BitRole::raw_key:
      return "raw";
    case BitRole::seed:
      return "seed";
    case BitRole::final_key:
      return "final";
  }
  return "unknown";
}

void write_bits(std::ostream& out, const BitVector& bits, BitRole role) {
  out.write(kMagic.data(), kMagic.size());
  put_le(out, kBitFileVersion, 2);
  out.put(static_cast<char>(role));
  out.put(0);
  put_le(out, bits.size(), 8);
  const std::size_t payload = (bits.size() + 7) / 8;
  const auto words = bits.words();
  for (std::size_t i = 0; i < payload; ++i) {
    out.put(static_cast<char>((words[i / 8] >> (8 * (i % 8))) & 0xFF));
  }
  if (!out) throw FormatError("failed writing bit stream");
}

void write_bits(const std::filesystem::path& path, const BitVector& bits,
                BitRole role) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot open " + path.string() + " for writing");
  write_bits(out, bits, role);
}

BitFile read_bit_file(std::istream& in, std::optional<BitRole> expected_role,
                      std::optional<std::size_t> expected_length) {
  std::array<unsigned char, kBitFileHeaderBytes> header{};
  in.read(reinterpret_cast<char*>(header.data()), header.size());
  if (in.gcount() != static_cast<std::streamsize>(header.size())) {
    throw FormatError("truncated header");
  }
  if (!std::equal(kMagic.begin(), kMagic.end(), header.begin())) {
    throw FormatError("bad magic, not a QPA1 bit file");
  }
  const auto version = get_le(header.data() + 4, 2);
  if (version != kBitFileVersion) {
    throw FormatError("unsupported format version " + std::to_string(version));
  }
  if (header[6] > static_cast<unsigned char>(BitRole::final_key)) {
    throw FormatError("unknown role byte " + std::to_string(header[6]));
  }
  if (header[7] != 0) throw FormatError("reserved header byte is nonzero");

  BitFile file;
  file.role = static_cast<BitRole>(header[6]);
  const std::uint64_t length = get_le(header.data() + 8, 8);
  if (expected_role && *expected_role != file.role) {
    throw FormatError(std::string("expected a ") + to_string(*expected_role) +
                      " file, found role " + to_string(file.role));
  }
  if (expected_length && *expected_length != length) {
    throw FormatError("expected " + std::to_string(*expected_length) +
                      " bits, header declares " + std::to_string(length));
  }
  if (length > (std::uint64_t{1} << 40)) {
    throw FormatError("implausible bit length " + std::to_string(length));
  }

  const std::size_t payload = static_cast<std::size_t>((length + 7) / 8);
  std::vector<unsigned char> bytes(payload);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(payload));
  if (static_cast<std::size_t>(in.gcount()) != payload) {
    throw FormatError("truncated payload: expected " + std::to_string(payload) +
                      " bytes, got " + std::to_string(in.gcount()));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("trailing bytes after payload");
  }

  std::vector<BitVector::Word> words((length + 63) / 64, 0);
  for (std::size_t i = 0; i < payload; ++i) {
    words[i / 8] |= BitVector::Word{bytes[i]} << (8 * (i % 8));
  }
  file.bits = BitVector::from_words(std::move(words), length);
  return file;
}

BitFile read_bit_file(const std::filesystem::path& path,
                      std::optional<BitRole> expected_role,
                      std::optional<std::size_t> expected_length) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return read_bit_file(in, expected_role, expected_length);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace qpa
