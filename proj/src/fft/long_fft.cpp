#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "complex_ops.hpp"
#include "qpa/errors.hpp"
#include "qpa/fft.hpp"
#include "qpa/params.hpp"
#include "qpa/transpose.hpp"

namespace qpa::fft {
namespace {

// Tile of the in-place physical transpose; 32x32 complex doubles = 16 KiB.
constexpr std::size_t kTransposeTile = 32;

Complex unit_root(std::size_t p, std::size_t n) {
  const double angle =
      -2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

void physical_transpose(std::span<Complex> data, std::size_t k,
                        TransformStats* stats, Execution exec) {
  transpose::transpose_in_place(data, k, kTransposeTile, exec);
  if (stats) ++stats->transposes;
}

// Row FFTs over every row; when `twiddle` is set, row i is then scaled by
// w_n^(i*j) (conjugated for the inverse direction).
void row_pass(const LongFftPlan& plan, std::span<Complex> data, Direction dir,
              bool twiddle, TransformStats* stats, Execution exec) {
  const std::size_t k = plan.layout().k;
  const auto& tw = plan.twiddles();
  const bool inverse = dir == Direction::inverse;
  const auto rows = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for schedule(static) if (use_threads(exec))
  for (std::ptrdiff_t si = 0; si < rows; ++si) {
    const auto i = static_cast<std::size_t>(si);
    auto row = data.subspan(i * k, k);
    plan.rows().execute(row, dir);
    if (twiddle) {
      for (std::size_t j = 1; j < k; ++j) {
        const Complex w = tw.power(i * j);
        row[j] = detail::mul(row[j], inverse ? std::conj(w) : w);
      }
    }
  }
  if (stats) {
    stats->row_transforms += k;
    if (twiddle) ++stats->twiddle_passes;
  }
}

std::span<Complex> checked(std::span<Complex> data, const LongFftPlan& plan) {
  if (data.size() != plan.length()) {
    throw DimensionError("buffer length " + std::to_string(data.size()) +
                         " does not match plan length " +
                         std::to_string(plan.length()));
  }
  return data;
}

}  // namespace

TwiddleTable::TwiddleTable(std::size_t n) : n_(n), k_(side_length(n)) {
  coarse_.resize(k_);
  fine_.resize(k_);
  for (std::size_t p = 0; p < k_; ++p) {
    coarse_[p] = unit_root(p * k_, n_);
    fine_[p] = unit_root(p, n_);
  }
}

MatrixLayout MatrixLayout::for_length(std::size_t n) {
  return MatrixLayout(side_length(n));
}

LongFftPlan::LongFftPlan(std::size_t n)
    : layout_(MatrixLayout::for_length(n)), rows_(layout_.k), twiddles_(n) {}

std::shared_ptr<const LongFftPlan> LongFftPlan::get(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::shared_ptr<const LongFftPlan>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    try {
      slot = std::make_shared<const LongFftPlan>(n);
    } catch (...) {
      cache.erase(n);
      throw;
    }
  }
  return slot;
}

void fft2d_natural_in_place(std::span<Complex> data, Direction dir,
                            TransformStats* stats, Execution exec) {
  const auto plan = LongFftPlan::get(data.size());
  checked(data, *plan);
  const std::size_t k = plan->layout().k;
  physical_transpose(data, k, stats, exec);
  row_pass(*plan, data, dir, /*twiddle=*/true, stats, exec);
  physical_transpose(data, k, stats, exec);
  row_pass(*plan, data, dir, /*twiddle=*/false, stats, exec);
  physical_transpose(data, k, stats, exec);
}

void fft2d_permuted_in_place(std::span<Complex> data, Direction dir,
                             TransformStats* stats, Execution exec) {
  const auto plan = LongFftPlan::get(data.size());
  checked(data, *plan);
  const std::size_t k = plan->layout().k;
  row_pass(*plan, data, dir, /*twiddle=*/true, stats, exec);
  physical_transpose(data, k, stats, exec);
  row_pass(*plan, data, dir, /*twiddle=*/false, stats, exec);
}

void fft2d_in_place(Variant variant, std::span<Complex> data, Direction dir,
                    TransformStats* stats, Execution exec) {
  if (variant == Variant::natural) {
    fft2d_natural_in_place(data, dir, stats, exec);
  } else {
    fft2d_permuted_in_place(data, dir, stats, exec);
  }
}

ComplexBuffer fft2d_natural(ComplexBuffer x, Direction dir,
                            TransformStats* stats, Execution exec) {
  fft2d_natural_in_place(x, dir, stats, exec);
  return x;
}

ComplexBuffer fft2d_permuted(ComplexBuffer x, Direction dir,
                             TransformStats* stats, Execution exec) {
  fft2d_permuted_in_place(x, dir, stats, exec);
  return x;
}

ComplexBuffer permute_digits(std::span<const Complex> x) {
  const MatrixLayout layout = MatrixLayout::for_length(x.size());
  ComplexBuffer out(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) out[layout.digit_transpose(p)] = x[p];
  return out;
}

std::size_t count_transposes(Variant variant) {
  ComplexBuffer probe(kMinSide * kMinSide, Complex{1.0, 0.0});
  TransformStats stats;
  fft2d_in_place(variant, probe, Direction::forward, &stats, Execution::serial);
  fft2d_in_place(variant, probe, Direction::inverse, &stats, Execution::serial);
  return stats.transposes;
}

}  // namespace qpa::fft
