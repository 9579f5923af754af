#pragma once

#include <cstddef>
#include <vector>

namespace qpa {

// Block lengths accepted by the transform: n = k * k with k a power of two
// in [kMinSide, kMaxSide].
inline constexpr std::size_t kMinSide = 8;
inline constexpr std::size_t kMaxSide = 1024;

bool is_supported_length(std::size_t n) noexcept;
// Side k of the k x k layout for a supported n; throws ParameterError otherwise.
std::size_t side_length(std::size_t n);
void require_supported_length(std::size_t n);
// Every supported n in increasing order (64, 256, ..., 2^20).
std::vector<std::size_t> supported_lengths();

// Upper bound on the eavesdropper's mutual information with the final key,
// 2^-s / ln 2, for security coefficient s.
double leakage_bound(double s);

// r = n - t - s. Throws ParameterError when n <= t + s.
std::size_t final_key_length(std::size_t n, std::size_t t, std::size_t s);

// Block geometry and security budget of one amplification run.
//
// Invariants: 0 < r < n, s = n - t - r >= 1, n supported.
struct PaParams {
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t t = 0;
  std::size_t s = 0;

  // From an explicit final key length; s is derived.
  static PaParams from_key_length(std::size_t n, std::size_t r,
                                  std::size_t t = 0);
  // From the eavesdropper budget and security coefficient; r is derived.
  static PaParams from_security(std::size_t n, std::size_t t, std::size_t s);

  // Throws ParameterError if any invariant is broken or s < min_security.
  void validate(std::size_t min_security = 1) const;

  double leakage() const { return leakage_bound(static_cast<double>(s)); }
};

}  // namespace qpa
