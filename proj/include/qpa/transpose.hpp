#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qpa/errors.hpp"
#include "qpa/execution.hpp"

namespace qpa::transpose {

template <typename T>
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  T& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

enum class Strategy { naive, blocked };
const char* to_string(Strategy s) noexcept;

// Tile side used when none is given: 32 at k = 1024, else max(4, k / 32).
std::size_t default_tile(std::size_t k) noexcept;

// Throws ParameterError unless k is a power of two >= 2 and t divides k.
void require_geometry(std::size_t k, std::size_t t);

// Tile decomposition shared by the physical blocked transpose and the
// row-span model. Tiles are visited block-row-major; inside the modelled
// memory each t x t tile is stored contiguously in that same order.
struct BlockedSchedule {
  std::size_t k;
  std::size_t t;

  std::size_t tiles_per_side() const noexcept { return k / t; }
  std::size_t tile_count() const noexcept {
    return tiles_per_side() * tiles_per_side();
  }
  // Origin (row, col) of the tile with the given visiting index.
  std::pair<std::size_t, std::size_t> tile_origin(std::size_t index) const noexcept {
    return {(index / tiles_per_side()) * t, (index % tiles_per_side()) * t};
  }
  // Address of element (i, j) in the tile-contiguous layout.
  std::size_t tiled_address(std::size_t i, std::size_t j) const noexcept {
    const std::size_t tile = (i / t) * tiles_per_side() + j / t;
    return tile * t * t + (i % t) * t + (j % t);
  }
};

namespace detail {

template <typename T>
void require_square(const Matrix<T>& m) {
  if (m.rows != m.cols) {
    throw DimensionError("transpose needs a square matrix, got " +
                         std::to_string(m.rows) + "x" + std::to_string(m.cols));
  }
}

}  // namespace detail

// out[j][i] = in[i][j], row by row.
template <typename T>
Matrix<T> transpose_naive(const Matrix<T>& in, Execution exec = Execution::serial) {
  detail::require_square(in);
  const std::size_t k = in.rows;
  Matrix<T> out(k, k);
  const auto sk = static_cast<std::ptrdiff_t>(k);
#pragma omp parallel for schedule(static) if (use_threads(exec))
  for (std::ptrdiff_t i = 0; i < sk; ++i) {
    const auto row = static_cast<std::size_t>(i);
    for (std::size_t j = 0; j < k; ++j) out.data[j * k + row] = in.data[row * k + j];
  }
  return out;
}

// Same result as transpose_naive, visiting t x t tiles of BlockedSchedule.
template <typename T>
Matrix<T> transpose_blocked(const Matrix<T>& in, std::size_t t,
                            Execution exec = Execution::serial) {
  detail::require_square(in);
  const std::size_t k = in.rows;
  require_geometry(k, t);
  const BlockedSchedule schedule{k, t};
  Matrix<T> out(k, k);
  const auto tiles = static_cast<std::ptrdiff_t>(schedule.tile_count());
#pragma omp parallel for schedule(static) if (use_threads(exec))
  for (std::ptrdiff_t tile = 0; tile < tiles; ++tile) {
    const auto [r0, c0] = schedule.tile_origin(static_cast<std::size_t>(tile));
    for (std::size_t i = r0; i < r0 + t; ++i) {
      for (std::size_t j = c0; j < c0 + t; ++j) out.data[j * k + i] = in.data[i * k + j];
    }
  }
  return out;
}

// In-place transpose of a k x k row-major buffer by swapping tile pairs.
template <typename T>
void transpose_in_place(std::span<T> data, std::size_t k, std::size_t t,
                        Execution exec = Execution::parallel) {
  if (data.size() != k * k) {
    throw DimensionError("buffer of " + std::to_string(data.size()) +
                         " elements is not " + std::to_string(k) + "x" +
                         std::to_string(k));
  }
  t = std::min(t, k);
  require_geometry(k, t);
  const auto blocks = static_cast<std::ptrdiff_t>(k / t);
#pragma omp parallel for schedule(dynamic, 1) if (use_threads(exec))
  for (std::ptrdiff_t bi = 0; bi < blocks; ++bi) {
    const std::size_t r0 = static_cast<std::size_t>(bi) * t;
    for (std::size_t c0 = r0; c0 < k; c0 += t) {
      if (c0 == r0) {
        for (std::size_t i = r0; i < r0 + t; ++i) {
          for (std::size_t j = i + 1; j < r0 + t; ++j) {
            std::swap(data[i * k + j], data[j * k + i]);
          }
        }
      } else {
        for (std::size_t i = r0; i < r0 + t; ++i) {
          for (std::size_t j = c0; j < c0 + t; ++j) {
            std::swap(data[i * k + j], data[j * k + i]);
          }
        }
      }
    }
  }
}

// Row-span events of one transpose under the memory model where each memory
// row holds exactly k elements. An event is an access whose memory row
// differs from the previous access in the same phase; the first access of a
// phase is an event.
struct AccessCostReport {
  Strategy strategy = Strategy::naive;
  std::size_t k = 0;
  std::size_t t = 1;
  std::uint64_t write_events = 0;
  std::uint64_t read_events = 0;

  std::uint64_t total() const noexcept { return write_events + read_events; }
};

class RowSpanCounter {
 public:
  explicit RowSpanCounter(std::size_t row_capacity) : capacity_(row_capacity) {}

  void touch(std::size_t address) noexcept {
    const std::size_t row = address / capacity_;
    if (!started_ || row != last_row_) ++events_;
    started_ = true;
    last_row_ = row;
  }
  std::uint64_t events() const noexcept { return events_; }

 private:
  std::size_t capacity_;
  std::size_t last_row_ = 0;
  bool started_ = false;
  std::uint64_t events_ = 0;
};

// Replays the write phase (source rows stored in arrival order) and the read
// phase (output rows gathered column-wise) of a strategy and counts events.
// t is ignored for the naive strategy; t == 0 selects default_tile(k).
AccessCostReport simulate_row_spans(Strategy strategy, std::size_t k,
                                    std::size_t t = 0);

struct TransposeBenchReport {
  std::size_t k = 0;
  std::size_t t = 0;
  std::size_t repetitions = 0;
  std::size_t element_bits = 64;
  bool outputs_equal = false;
  double naive_seconds = 0.0;    // best of `repetitions`
  double blocked_seconds = 0.0;  // best of `repetitions`

  double data_megabits() const noexcept {
    return static_cast<double>(k * k * element_bits) / (1024.0 * 1024.0);
  }
  double naive_gbps() const noexcept { return gbps(naive_seconds); }
  double blocked_gbps() const noexcept { return gbps(blocked_seconds); }

 private:
  double gbps(double seconds) const noexcept {
    return seconds > 0 ? static_cast<double>(k * k * element_bits) / seconds / 1e9
                       : 0.0;
  }
};

// Times both strategies on the same k x k matrix of 64-bit words after
// checking that their outputs agree.
TransposeBenchReport bench_transpose(std::size_t k, std::size_t t,
                                     std::size_t repetitions,
                                     Execution exec = Execution::serial);

void print_bench_report(std::ostream& out, const TransposeBenchReport& report);
void print_cost_report(std::ostream& out, const AccessCostReport& report);

}  // namespace qpa::transpose
