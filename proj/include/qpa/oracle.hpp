#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qpa/bit_vector.hpp"
#include "qpa/execution.hpp"
#include "qpa/seed.hpp"

// Exact GF(2) evaluation of the modified Toeplitz hash Y = [I | T] x.
// Everything the FFT pipeline produces is checked against this namespace.
namespace qpa::oracle {

// Logical r x (n - r) Toeplitz block, T[i][j] = V[r - 1 - i + j].
class ToeplitzView {
 public:
  ToeplitzView(const ToeplitzSeed& seed, std::size_t r);

  std::size_t rows() const noexcept { return r_; }
  std::size_t cols() const noexcept { return seed_->block_length() - r_; }
  bool operator()(std::size_t i, std::size_t j) const noexcept {
    return (*seed_)[r_ - 1 - i + j];
  }
  // Seed index of row i's first entry; the row occupies [offset, offset + cols).
  std::size_t row_offset(std::size_t i) const noexcept { return r_ - 1 - i; }
  const ToeplitzSeed& seed() const noexcept { return *seed_; }

 private:
  const ToeplitzSeed* seed_;
  std::size_t r_;
};

// Y[i] = x[i] ^ parity(T[i][.] & x[r..n)), word-packed.
BitVector hash_direct(const BitVector& x, const ToeplitzSeed& seed,
                      std::size_t r, Execution exec = Execution::parallel);

// Bit i of hash_direct in O(n / 64) time and O(1) extra space.
bool hash_single_bit(const BitVector& x, const ToeplitzSeed& seed,
                     std::size_t r, std::size_t i);

// c[u] = sum_j a[(u - j) mod m] * b[j], exact, O(m^2).
std::vector<std::int64_t> cyclic_convolve_naive(std::span<const std::int64_t> a,
                                                std::span<const std::int64_t> b);

}  // namespace qpa::oracle
