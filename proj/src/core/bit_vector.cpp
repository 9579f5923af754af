#include "qpa/bit_vector.hpp"

#include <bit>
#include <string>

#include "qpa/errors.hpp"

namespace qpa {

BitVector::BitVector(std::size_t length)
    : length_(length), words_(words_for(length), 0) {}

BitVector BitVector::from_words(std::vector<Word> words, std::size_t length) {
  if (words.size() != words_for(length)) {
    throw DimensionError("word count " + std::to_string(words.size()) +
                         " does not hold exactly " + std::to_string(length) +
                         " bits");
  }
  BitVector v;
  v.length_ = length;
  v.words_ = std::move(words);
  if (!v.pad_bits_clear()) {
    throw FormatError("nonzero pad bits beyond bit length " +
                      std::to_string(length));
  }
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw FormatError("bit string may only contain '0' and '1'");
    }
  }
  return v;
}

BitVector BitVector::ones(std::size_t length) {
  BitVector v(length);
  for (auto& w : v.words_) w = ~Word{0};
  v.clear_padding();
  return v;
}

BitVector::Word BitVector::extract64(std::size_t offset) const noexcept {
  if (offset >= length_) return 0;
  const std::size_t word = offset / kWordBits;
  const unsigned shift = offset % kWordBits;
  Word out = words_[word] >> shift;
  if (shift != 0 && word + 1 < words_.size()) {
    out |= words_[word + 1] << (kWordBits - shift);
  }
  return out;
}

BitVector BitVector::slice(std::size_t begin, std::size_t length) const {
  if (begin > length_ || length > length_ - begin) {
    throw DimensionError("slice [" + std::to_string(begin) + ", " +
                         std::to_string(begin + length) + ") exceeds length " +
                         std::to_string(length_));
  }
  BitVector out(length);
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    out.words_[w] = extract64(begin + w * kWordBits);
  }
  out.clear_padding();
  return out;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.length_ != length_) {
    throw DimensionError("xor of bit vectors with lengths " +
                         std::to_string(length_) + " and " +
                         std::to_string(other.length_));
  }
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::size_t BitVector::popcount() const noexcept {
  std::size_t total = 0;
  for (Word w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::pad_bits_clear() const noexcept {
  const unsigned used = length_ % kWordBits;
  if (used == 0 || words_.empty()) return true;
  return (words_.back() >> used) == 0;
}

void BitVector::clear_padding() noexcept {
  const unsigned used = length_ % kWordBits;
  if (used != 0 && !words_.empty()) {
    words_.back() &= (Word{1} << used) - 1;
  }
}

std::string BitVector::to_string() const {
  std::string s(length_, '0');
  for (std::size_t i = 0; i < length_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

}  // namespace qpa
