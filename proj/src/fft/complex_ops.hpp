#pragma once

#include "qpa/fft.hpp"

namespace qpa::fft::detail {

// Plain product without the C99 Annex G inf/nan recovery that std::complex
// multiplication performs; all operands here are finite.
inline Complex mul(Complex a, Complex b) noexcept {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace qpa::fft::detail
