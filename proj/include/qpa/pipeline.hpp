#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qpa/bit_vector.hpp"
#include "qpa/execution.hpp"
#include "qpa/fft.hpp"
#include "qpa/params.hpp"
#include "qpa/seed.hpp"

namespace qpa::pipeline {

// Mode A runs the natural-order long transform (six physical transposes per
// convolution). Mode B runs the permuted-order transform and absorbs the
// reordering into operand loads and result reads (two transposes). Both
// produce identical keys.
enum class Mode { natural, permuted };

const char* to_string(Mode mode) noexcept;  // "A" / "B"
// Accepts "A"/"B" (any case), "natural", "permuted"; throws ParameterError.
Mode parse_mode(std::string_view text);

inline constexpr double kResidualGate = 0.25;

// Real operands of the cyclic convolution whose first r outputs are the
// Toeplitz block product T * x[r..n).
//   v_circ[0] = 0, v_circ[p] = V[n-1-p]   (1 <= p < n)
//   x_masked[p] = p < r ? 0 : x[p]
struct ConvolutionOperands {
  std::size_t r = 0;
  std::vector<double> v_circ;
  std::vector<double> x_masked;
};

ConvolutionOperands build_operands(const BitVector& x, const ToeplitzSeed& seed,
                                   std::size_t r);

// Cyclic convolution v_circ (*) x_masked through the packed real transform,
// normalised by 1/n, in natural index order.
std::vector<double> convolve(const ConvolutionOperands& operands, Mode mode,
                             fft::TransformStats* stats = nullptr,
                             Execution exec = Execution::parallel);

// Mode B schedule. With `raw` the physical (digit-transposed) result buffer
// is returned untranslated.
std::vector<double> run_mode_b_schedule(const ConvolutionOperands& operands,
                                        bool raw = false,
                                        fft::TransformStats* stats = nullptr,
                                        Execution exec = Execution::parallel);

// Largest distance of any value from its nearest integer.
double max_residual(std::span<const double> values) noexcept;

struct StageTimings {
  double pack_ms = 0;
  double forward_ms = 0;
  double multiply_ms = 0;
  double inverse_ms = 0;
  double extract_ms = 0;

  double total_ms() const noexcept {
    return pack_ms + forward_ms + multiply_ms + inverse_ms + extract_ms;
  }
};

struct FinalKey {
  BitVector bits;
  Mode mode = Mode::permuted;
  double residual = 0.0;
  fft::TransformStats stats;
  StageTimings timings;
};

struct Options {
  Mode mode = Mode::permuted;
  Execution exec = Execution::parallel;
  std::size_t min_security = 1;
  double residual_gate = kResidualGate;
};

// Final key Y = x[0..r) ^ parity(round(v_circ (*) x_masked)[0..r)).
// Parameters are validated before any work; a residual at or above the gate
// throws PrecisionError.
FinalKey privacy_amplify(const BitVector& x, const ToeplitzSeed& seed,
                         const PaParams& params, const Options& options = {});
FinalKey privacy_amplify(const BitVector& x, const ToeplitzSeed& seed,
                         std::size_t r, Mode mode);

struct PrecisionRow {
  std::size_t n = 0;
  double all_ones_residual = 0;
  double random_residual = 0;  // max over the random instances

  double max_residual() const noexcept {
    return all_ones_residual > random_residual ? all_ones_residual
                                               : random_residual;
  }
};

// For each n: all-ones key and seed, plus `random_instances` uniformly random
// ones, each with r = n / 2. Measures residuals without enforcing the gate.
std::vector<PrecisionRow> precision_profile(std::span<const std::size_t> lengths,
                                            std::size_t random_instances = 20,
                                            std::uint64_t rng_seed = 1,
                                            Mode mode = Mode::permuted);

// Appends one "key=value" block, terminated by a blank line.
void write_manifest(std::ostream& out, const PaParams& params,
                    const FinalKey& key);
void append_manifest(const std::filesystem::path& path, const PaParams& params,
                     const FinalKey& key);

}  // namespace qpa::pipeline
