#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace qpa {

// Packed binary sequence with an exact bit length.
//
// Bit i lives in bit (i % 64) of word (i / 64), LSB-first. Pad bits past
// size() in the last word are always zero; every mutating member keeps
// that invariant.
class BitVector {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  BitVector() = default;
  explicit BitVector(std::size_t length);

  // Adopts packed words; throws DimensionError if the word count is wrong
  // and FormatError if any pad bit is set.
  static BitVector from_words(std::vector<Word> words, std::size_t length);
  // Parses a string of '0'/'1' characters, index 0 first.
  static BitVector from_string(std::string_view bits);
  static BitVector ones(std::size_t length);

  std::size_t size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  std::size_t word_count() const noexcept { return words_.size(); }

  bool get(std::size_t i) const noexcept {
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
  }
  void set(std::size_t i, bool value) noexcept {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
      words_[i / kWordBits] |= mask;
    } else {
      words_[i / kWordBits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept {
    words_[i / kWordBits] ^= Word{1} << (i % kWordBits);
  }

  // 64 bits starting at bit `offset`; positions at or past size() read as 0.
  Word extract64(std::size_t offset) const noexcept;

  // Copy of bits [begin, begin + length).
  BitVector slice(std::size_t begin, std::size_t length) const;

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) {
    lhs ^= rhs;
    return lhs;
  }

  std::size_t popcount() const noexcept;
  bool pad_bits_clear() const noexcept;

  std::span<const Word> words() const noexcept { return words_; }
  std::span<Word> mutable_words() noexcept { return words_; }
  // Re-establishes the pad-bit invariant after writes through mutable_words().
  void clear_padding() noexcept;

  std::string to_string() const;

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  static std::size_t words_for(std::size_t length) noexcept {
    return (length + kWordBits - 1) / kWordBits;
  }

  std::size_t length_ = 0;
  std::vector<Word> words_;
};

}  // namespace qpa
