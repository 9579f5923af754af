#pragma once

#include <bit>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "qpa/execution.hpp"

namespace qpa::fft {

using Complex = std::complex<double>;
using ComplexBuffer = std::vector<Complex>;

// Forward uses the kernel exp(-2*pi*i/m). Inverse uses the conjugate kernel
// and is NOT scaled by 1/m; callers normalise once.
enum class Direction { forward, inverse };

// natural: row-column long transform with all three transposes, output in
// natural frequency order. permuted: the transpose-saving form whose input
// and output are both reordered by digit_transpose.
enum class Variant { natural, permuted };

inline constexpr std::size_t kMinSmallSize = 8;
inline constexpr std::size_t kMaxSmallSize = 4096;

// Instrumentation counters, accumulated by every long transform.
struct TransformStats {
  std::size_t transposes = 0;
  std::size_t row_transforms = 0;
  std::size_t twiddle_passes = 0;

  TransformStats& operator+=(const TransformStats& o) noexcept {
    transposes += o.transposes;
    row_transforms += o.row_transforms;
    twiddle_passes += o.twiddle_passes;
    return *this;
  }
};

bool is_supported_small_size(std::size_t m) noexcept;

// Iterative in-place radix-2 transform of one power-of-two length.
class SmallFftPlan {
 public:
  explicit SmallFftPlan(std::size_t m);

  std::size_t size() const noexcept { return m_; }
  void execute(std::span<Complex> data, Direction dir) const;

 private:
  std::size_t m_;
  std::vector<std::size_t> bit_reverse_;
  std::vector<Complex> roots_;  // exp(-2*pi*i*p/m), p < m/2
};

// Powers of w_n = exp(-2*pi*i/n), stored as two k-entry tables (n = k*k):
// w^p = coarse[(p / k) mod k] * fine[p mod k].
class TwiddleTable {
 public:
  explicit TwiddleTable(std::size_t n);

  std::size_t length() const noexcept { return n_; }
  Complex power(std::size_t p) const noexcept {
    const std::size_t q = p % n_;
    return coarse_[q / k_] * fine_[q % k_];
  }
  std::span<const Complex> coarse() const noexcept { return coarse_; }
  std::span<const Complex> fine() const noexcept { return fine_; }

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<Complex> coarse_;
  std::vector<Complex> fine_;
};

// Addressing of a length n = k*k sequence as a k x k row-major matrix.
struct MatrixLayout {
  std::size_t k = 0;
  unsigned shift = 0;  // log2(k)

  // k must be a power of two.
  explicit MatrixLayout(std::size_t side)
      : k(side), shift(static_cast<unsigned>(std::countr_zero(side))) {}
  static MatrixLayout for_length(std::size_t n);

  std::size_t length() const noexcept { return k * k; }
  std::size_t index(std::size_t row, std::size_t col) const noexcept {
    return (row << shift) | col;
  }
  // i*k + j  <->  j*k + i
  std::size_t digit_transpose(std::size_t p) const noexcept {
    return ((p & (k - 1)) << shift) | (p >> shift);
  }
};

// Shared, immutable per-length state: row plan and twiddles.
class LongFftPlan {
 public:
  explicit LongFftPlan(std::size_t n);

  // Cached per n; safe to call concurrently.
  static std::shared_ptr<const LongFftPlan> get(std::size_t n);

  std::size_t length() const noexcept { return layout_.length(); }
  const MatrixLayout& layout() const noexcept { return layout_; }
  const SmallFftPlan& rows() const noexcept { return rows_; }
  const TwiddleTable& twiddles() const noexcept { return twiddles_; }

 private:
  MatrixLayout layout_;
  SmallFftPlan rows_;
  TwiddleTable twiddles_;
};

// Single small transform, length in [8, 4096].
ComplexBuffer fft_small(ComplexBuffer buf, Direction dir);
void fft_small_in_place(std::span<Complex> buf, Direction dir);

// Natural-order long transform: transpose, row FFTs, twiddle, transpose,
// row FFTs, transpose. Equals the length-n DFT.
void fft2d_natural_in_place(std::span<Complex> data, Direction dir,
                            TransformStats* stats = nullptr,
                            Execution exec = Execution::parallel);
ComplexBuffer fft2d_natural(ComplexBuffer x, Direction dir,
                            TransformStats* stats = nullptr,
                            Execution exec = Execution::parallel);

// Permuted-order long transform: row FFTs, twiddle, transpose, row FFTs.
// fft2d_permuted(x) == digit_transpose(fft2d_natural(digit_transpose(x))).
void fft2d_permuted_in_place(std::span<Complex> data, Direction dir,
                             TransformStats* stats = nullptr,
                             Execution exec = Execution::parallel);
ComplexBuffer fft2d_permuted(ComplexBuffer x, Direction dir,
                             TransformStats* stats = nullptr,
                             Execution exec = Execution::parallel);

void fft2d_in_place(Variant variant, std::span<Complex> data, Direction dir,
                    TransformStats* stats = nullptr,
                    Execution exec = Execution::parallel);

// Applies the digit-transpose permutation T to a length k*k buffer.
ComplexBuffer permute_digits(std::span<const Complex> x);

// Physical transposes in one forward + inverse pass of `variant`, measured
// by running the instrumented transforms.
std::size_t count_transposes(Variant variant);

// z = x + i v
ComplexBuffer real_pack(std::span<const double> x, std::span<const double> v);

struct UnpackedSpectra {
  ComplexBuffer x;
  ComplexBuffer v;
};

// Separates the spectra of the real and imaginary halves of a packed
// transform Z (natural frequency order).
UnpackedSpectra real_unpack_spectra(std::span<const Complex> z);

ComplexBuffer pointwise_multiply(std::span<const Complex> a,
                                 std::span<const Complex> b);

// In place: Z(f) <- X(f) * V(f), with X and V unpacked from Z on the fly.
// For Variant::permuted, physical slot q holds frequency digit_transpose(q).
void multiply_packed_spectra(std::span<Complex> z, Variant order,
                             Execution exec = Execution::parallel);

}  // namespace qpa::fft
