#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "complex_ops.hpp"
#include "qpa/errors.hpp"
#include "qpa/fft.hpp"

namespace qpa::fft {

bool is_supported_small_size(std::size_t m) noexcept {
  return std::has_single_bit(m) && m >= kMinSmallSize && m <= kMaxSmallSize;
}

SmallFftPlan::SmallFftPlan(std::size_t m) : m_(m) {
  if (!is_supported_small_size(m)) {
    throw ParameterError("unsupported small FFT length " + std::to_string(m));
  }
  const int bits = std::countr_zero(m);
  bit_reverse_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1U) << (bits - 1 - b);
    bit_reverse_[i] = r;
  }
  roots_.resize(m / 2);
  for (std::size_t p = 0; p < m / 2; ++p) {
    const double angle =
        -2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(m);
    roots_[p] = {std::cos(angle), std::sin(angle)};
  }
}

void SmallFftPlan::execute(std::span<Complex> data, Direction dir) const {
  if (data.size() != m_) {
    throw DimensionError("plan for length " + std::to_string(m_) +
                         " applied to " + std::to_string(data.size()));
  }
  for (std::size_t i = 0; i < m_; ++i) {
    const std::size_t r = bit_reverse_[i];
    if (i < r) std::swap(data[i], data[r]);
  }
  const bool inverse = dir == Direction::inverse;
  for (std::size_t len = 2; len <= m_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = m_ / len;
    for (std::size_t j = 0; j < half; ++j) {
      const Complex root = roots_[j * stride];
      const Complex w = inverse ? std::conj(root) : root;
      for (std::size_t base = j; base < m_; base += len) {
        const Complex a = data[base];
        const Complex b = detail::mul(data[base + half], w);
        data[base] = a + b;
        data[base + half] = a - b;
      }
    }
  }
}

void fft_small_in_place(std::span<Complex> buf, Direction dir) {
  SmallFftPlan(buf.size()).execute(buf, dir);
}

ComplexBuffer fft_small(ComplexBuffer buf, Direction dir) {
  fft_small_in_place(buf, dir);
  return buf;
}

}  // namespace qpa::fft
