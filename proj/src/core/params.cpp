#include "qpa/params.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "qpa/errors.hpp"

namespace qpa {

bool is_supported_length(std::size_t n) noexcept {
  for (std::size_t k = kMinSide; k <= kMaxSide; k *= 2) {
    if (k * k == n) return true;
  }
  return false;
}

std::size_t side_length(std::size_t n) {
  require_supported_length(n);
  return std::size_t{1} << (std::countr_zero(n) / 2);
}

void require_supported_length(std::size_t n) {
  if (!is_supported_length(n)) {
    throw ParameterError("unsupported block length n=" + std::to_string(n) +
                         " (need n = k*k, k a power of two in [" +
                         std::to_string(kMinSide) + ", " +
                         std::to_string(kMaxSide) + "])");
  }
}

std::vector<std::size_t> supported_lengths() {
  std::vector<std::size_t> out;
  for (std::size_t k = kMinSide; k <= kMaxSide; k *= 2) out.push_back(k * k);
  return out;
}

double leakage_bound(double s) {
  return std::exp2(-s) / std::numbers::ln2;
}

std::size_t final_key_length(std::size_t n, std::size_t t, std::size_t s) {
  if (t >= n || s >= n - t) {
    throw ParameterError("no positive key length: n=" + std::to_string(n) +
                         " <= t+s=" + std::to_string(t) + "+" +
                         std::to_string(s));
  }
  return n - t - s;
}

PaParams PaParams::from_key_length(std::size_t n, std::size_t r,
                                   std::size_t t) {
  if (r == 0 || r >= n) {
    throw ParameterError("final key length r=" + std::to_string(r) +
                         " must satisfy 0 < r < n=" + std::to_string(n));
  }
  if (t + r >= n) {
    throw ParameterError("security coefficient s = n - t - r = " +
                         std::to_string(n) + " - " + std::to_string(t) +
                         " - " + std::to_string(r) + " is not positive");
  }
  PaParams p{n, r, t, n - t - r};
  p.validate();
  return p;
}

PaParams PaParams::from_security(std::size_t n, std::size_t t, std::size_t s) {
  PaParams p{n, final_key_length(n, t, s), t, s};
  p.validate();
  return p;
}

void PaParams::validate(std::size_t min_security) const {
  require_supported_length(n);
  if (r == 0 || r >= n) {
    throw ParameterError("final key length r=" + std::to_string(r) +
                         " must satisfy 0 < r < n=" + std::to_string(n));
  }
  if (t + r + s != n) {
    throw ParameterError("inconsistent parameters: n - t - r != s");
  }
  if (s < 1 || s < min_security) {
    throw ParameterError("security coefficient s=" + std::to_string(s) +
                         " is below the required minimum " +
                         std::to_string(min_security < 1 ? 1 : min_security));
  }
}

}  // namespace qpa
