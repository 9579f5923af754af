#include "qpa/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "qpa/errors.hpp"

namespace qpa::oracle {
namespace {

void check_dimensions(const BitVector& x, const ToeplitzSeed& seed,
                      std::size_t r) {
  const std::size_t n = seed.block_length();
  if (x.size() != n) {
    throw DimensionError("input has " + std::to_string(x.size()) +
                         " bits but the seed is for n=" + std::to_string(n));
  }
  if (r == 0 || r >= n) {
    throw ParameterError("final key length r=" + std::to_string(r) +
                         " must satisfy 0 < r < n=" + std::to_string(n));
  }
}

// Parity of <V[offset .. offset + len), tail>, where tail holds x[r..n)
// re-aligned to bit 0.
bool row_parity(const BitVector& seed_bits, std::size_t offset,
                const BitVector& tail) {
  const auto tail_words = tail.words();
  BitVector::Word acc = 0;
  for (std::size_t w = 0; w < tail_words.size(); ++w) {
    acc ^= seed_bits.extract64(offset + w * BitVector::kWordBits) & tail_words[w];
  }
  return std::popcount(acc) & 1;
}

}  // namespace

ToeplitzView::ToeplitzView(const ToeplitzSeed& seed, std::size_t r)
    : seed_(&seed), r_(r) {
  if (r == 0 || r >= seed.block_length()) {
    throw ParameterError("Toeplitz block needs 0 < r < n");
  }
}

BitVector hash_direct(const BitVector& x, const ToeplitzSeed& seed,
                      std::size_t r, Execution exec) {
  check_dimensions(x, seed, r);
  const std::size_t n = seed.block_length();
  const BitVector tail = x.slice(r, n - r);
  const ToeplitzView view(seed, r);
  const BitVector& v = seed.bits();

  BitVector out = x.slice(0, r);
  auto out_words = out.mutable_words();
  const auto word_count = static_cast<std::ptrdiff_t>(out_words.size());

  // One output word per iteration keeps writes disjoint across threads.
#pragma omp parallel for schedule(dynamic, 4) if (use_threads(exec))
  for (std::ptrdiff_t w = 0; w < word_count; ++w) {
    const std::size_t first = static_cast<std::size_t>(w) * BitVector::kWordBits;
    const std::size_t last = std::min(first + BitVector::kWordBits, r);
    BitVector::Word word = 0;
    for (std::size_t i = first; i < last; ++i) {
      if (row_parity(v, view.row_offset(i), tail)) {
        word |= BitVector::Word{1} << (i - first);
      }
    }
    out_words[static_cast<std::size_t>(w)] ^= word;
  }
  return out;
}

bool hash_single_bit(const BitVector& x, const ToeplitzSeed& seed,
                     std::size_t r, std::size_t i) {
  check_dimensions(x, seed, r);
  if (i >= r) {
    throw ParameterError("row index " + std::to_string(i) +
                         " out of range for r=" + std::to_string(r));
  }
  const std::size_t n = seed.block_length();
  const std::size_t cols = n - r;
  const std::size_t offset = r - 1 - i;
  const BitVector& v = seed.bits();

  // Streams both operands without materialising the tail slice.
  BitVector::Word acc = 0;
  for (std::size_t c = 0; c < cols; c += BitVector::kWordBits) {
    BitVector::Word a = v.extract64(offset + c);
    BitVector::Word b = x.extract64(r + c);
    const std::size_t remaining = cols - c;
    if (remaining < BitVector::kWordBits) {
      const BitVector::Word mask = (BitVector::Word{1} << remaining) - 1;
      a &= mask;
      b &= mask;
    }
    acc ^= a & b;
  }
  return x.get(i) ^ static_cast<bool>(std::popcount(acc) & 1);
}

std::vector<std::int64_t> cyclic_convolve_naive(std::span<const std::int64_t> a,
                                                std::span<const std::int64_t> b) {
  if (a.size() != b.size()) {
    throw DimensionError("cyclic convolution of lengths " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  const std::size_t m = a.size();
  std::vector<std::int64_t> c(m, 0);
  for (std::size_t u = 0; u < m; ++u) {
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < m; ++j) {
      sum += a[(u + m - j) % m] * b[j];
    }
    c[u] = sum;
  }
  return c;
}

}  // namespace qpa::oracle
