#include "qpa/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <random>
#include <string>

#include "qpa/errors.hpp"

namespace qpa::pipeline {
namespace {

using fft::Complex;
using fft::Direction;
using fft::Variant;
using Clock = std::chrono::steady_clock;

Variant variant_of(Mode mode) {
  return mode == Mode::natural ? Variant::natural : Variant::permuted;
}

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Operand values at logical index p, read straight from the bit vectors.
struct OperandSource {
  const BitVector& x;
  const BitVector& v;
  std::size_t n;
  std::size_t r;

  double x_at(std::size_t p) const noexcept {
    return p >= r && x.get(p) ? 1.0 : 0.0;
  }
  double v_at(std::size_t p) const noexcept {
    return p != 0 && v.get(n - 1 - p) ? 1.0 : 0.0;
  }
};

void check_inputs(const BitVector& x, const ToeplitzSeed& seed, std::size_t r) {
  const std::size_t n = seed.block_length();
  require_supported_length(n);
  if (x.size() != n) {
    throw DimensionError("raw key has " + std::to_string(x.size()) +
                         " bits but the seed is for n=" + std::to_string(n));
  }
  if (r == 0 || r >= n) {
    throw ParameterError("final key length r=" + std::to_string(r) +
                         " must satisfy 0 < r < n=" + std::to_string(n));
  }
}

// Forward packed transform, spectrum product, unscaled inverse.
void convolve_packed(std::span<Complex> z, Variant variant,
                     fft::TransformStats* stats, Execution exec,
                     StageTimings* timings = nullptr) {
  auto start = Clock::now();
  fft::fft2d_in_place(variant, z, Direction::forward, stats, exec);
  if (timings) timings->forward_ms = ms_since(start);
  start = Clock::now();
  fft::multiply_packed_spectra(z, variant, exec);
  if (timings) timings->multiply_ms = ms_since(start);
  start = Clock::now();
  fft::fft2d_in_place(variant, z, Direction::inverse, stats, exec);
  if (timings) timings->inverse_ms = ms_since(start);
}

// Loads operands into slot q as logical index map(q), convolves, and returns
// the scaled physical buffer.
template <typename Map>
std::vector<double> convolve_operands(const ConvolutionOperands& ops, Map map,
                                      Variant variant, fft::TransformStats* stats,
                                      Execution exec) {
  if (ops.v_circ.size() != ops.x_masked.size()) {
    throw DimensionError("operand lengths differ");
  }
  const std::size_t n = ops.v_circ.size();
  require_supported_length(n);
  fft::ComplexBuffer z(n);
  for (std::size_t q = 0; q < n; ++q) {
    const std::size_t p = map(q);
    z[q] = {ops.x_masked[p], ops.v_circ[p]};
  }
  convolve_packed(z, variant, stats, exec);
  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t q = 0; q < n; ++q) out[q] = z[q].real() * scale;
  return out;
}

}  // namespace

const char* to_string(Mode mode) noexcept {
  return mode == Mode::natural ? "A" : "B";
}

Mode parse_mode(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "a" || lower == "natural") return Mode::natural;
  if (lower == "b" || lower == "permuted") return Mode::permuted;
  throw ParameterError("unknown mode '" + std::string(text) + "' (use A or B)");
}

ConvolutionOperands build_operands(const BitVector& x, const ToeplitzSeed& seed,
                                   std::size_t r) {
  check_inputs(x, seed, r);
  const std::size_t n = seed.block_length();
  const OperandSource src{x, seed.bits(), n, r};
  ConvolutionOperands ops{r, std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t p = 0; p < n; ++p) {
    ops.v_circ[p] = src.v_at(p);
    ops.x_masked[p] = src.x_at(p);
  }
  return ops;
}

std::vector<double> convolve(const ConvolutionOperands& operands, Mode mode,
                             fft::TransformStats* stats, Execution exec) {
  if (mode == Mode::permuted) {
    return run_mode_b_schedule(operands, /*raw=*/false, stats, exec);
  }
  return convolve_operands(
      operands, [](std::size_t q) { return q; }, Variant::natural, stats, exec);
}

std::vector<double> run_mode_b_schedule(const ConvolutionOperands& operands,
                                        bool raw, fft::TransformStats* stats,
                                        Execution exec) {
  const auto layout = fft::MatrixLayout::for_length(operands.v_circ.size());
  const auto map = [&](std::size_t q) { return layout.digit_transpose(q); };
  auto physical =
      convolve_operands(operands, map, Variant::permuted, stats, exec);
  if (raw) return physical;
  std::vector<double> out(physical.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = physical[map(p)];
  return out;
}

double max_residual(std::span<const double> values) noexcept {
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v - std::floor(v + 0.5)));
  return worst;
}

FinalKey privacy_amplify(const BitVector& x, const ToeplitzSeed& seed,
                         const PaParams& params, const Options& options) {
  params.validate(options.min_security);
  if (seed.block_length() != params.n) {
    throw DimensionError("seed is for n=" + std::to_string(seed.block_length()) +
                         " but parameters have n=" + std::to_string(params.n));
  }
  check_inputs(x, seed, params.r);

  const std::size_t n = params.n;
  const std::size_t r = params.r;
  const Variant variant = variant_of(options.mode);
  const Execution exec = options.exec;
  const auto layout = fft::MatrixLayout::for_length(n);
  const bool permuted = variant == Variant::permuted;
  // Logical index held by physical slot q.
  const auto logical = [&](std::size_t q) {
    return permuted ? layout.digit_transpose(q) : q;
  };

  FinalKey key;
  key.mode = options.mode;
  fft::LongFftPlan::get(n);

  auto start = Clock::now();
  fft::ComplexBuffer z(n);
  const OperandSource src{x, seed.bits(), n, r};
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (use_threads(exec))
  for (std::ptrdiff_t sq = 0; sq < count; ++sq) {
    const std::size_t p = logical(static_cast<std::size_t>(sq));
    z[static_cast<std::size_t>(sq)] = {src.x_at(p), src.v_at(p)};
  }
  key.timings.pack_ms = ms_since(start);

  convolve_packed(z, variant, &key.stats, exec, &key.timings);

  start = Clock::now();
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<std::uint8_t> parity(r);
  double residual = 0.0;
#pragma omp parallel for schedule(static) reduction(max : residual) if (use_threads(exec))
  for (std::ptrdiff_t sq = 0; sq < count; ++sq) {
    const auto q = static_cast<std::size_t>(sq);
    const double value = z[q].real() * scale;
    const double nearest = std::floor(value + 0.5);
    residual = std::max(residual, std::abs(value - nearest));
    const std::size_t p = logical(q);
    if (p < r) parity[p] = static_cast<std::uint8_t>(static_cast<std::int64_t>(nearest) & 1);
  }
  key.residual = residual;
  if (!(residual < options.residual_gate)) {
    throw PrecisionError("convolution residual " + std::to_string(residual) +
                             " reached the rounding gate " +
                             std::to_string(options.residual_gate) +
                             " at n=" + std::to_string(n),
                         residual);
  }

  key.bits = x.slice(0, r);
  for (std::size_t p = 0; p < r; ++p) {
    if (parity[p]) key.bits.flip(p);
  }
  key.timings.extract_ms = ms_since(start);
  return key;
}

FinalKey privacy_amplify(const BitVector& x, const ToeplitzSeed& seed,
                         std::size_t r, Mode mode) {
  Options options;
  options.mode = mode;
  return privacy_amplify(x, seed, PaParams::from_key_length(x.size(), r), options);
}

std::vector<PrecisionRow> precision_profile(std::span<const std::size_t> lengths,
                                            std::size_t random_instances,
                                            std::uint64_t rng_seed, Mode mode) {
  std::vector<PrecisionRow> rows;
  std::mt19937_64 rng(rng_seed);
  Options options;
  options.mode = mode;
  options.residual_gate = 1.0;  // measure, never throw
  for (std::size_t n : lengths) {
    require_supported_length(n);
    const auto params = PaParams::from_key_length(n, n / 2);
    PrecisionRow row;
    row.n = n;
    row.all_ones_residual =
        privacy_amplify(BitVector::ones(n), ToeplitzSeed(BitVector::ones(n - 1), n),
                        params, options)
            .residual;
    for (std::size_t i = 0; i < random_instances; ++i) {
      BitVector x(n);
      BitVector v(n - 1);
      for (auto& w : x.mutable_words()) w = rng();
      for (auto& w : v.mutable_words()) w = rng();
      x.clear_padding();
      v.clear_padding();
      const auto key = privacy_amplify(x, ToeplitzSeed(std::move(v), n), params, options);
      row.random_residual = std::max(row.random_residual, key.residual);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qpa::pipeline
