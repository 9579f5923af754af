#include <bit>
#include <ostream>

#include "qpa/transpose.hpp"

namespace qpa::transpose {

const char* to_string(Strategy s) noexcept {
  return s == Strategy::naive ? "naive" : "blocked";
}

std::size_t default_tile(std::size_t k) noexcept {
  if (k == 1024) return 32;
  return std::max<std::size_t>(4, k / 32);
}

void require_geometry(std::size_t k, std::size_t t) {
  if (k < 2 || !std::has_single_bit(k)) {
    throw ParameterError("matrix side k=" + std::to_string(k) +
                         " must be a power of two >= 2");
  }
  if (t == 0 || t > k || k % t != 0) {
    throw ParameterError("tile t=" + std::to_string(t) + " does not divide k=" +
                         std::to_string(k));
  }
}

AccessCostReport simulate_row_spans(Strategy strategy, std::size_t k,
                                    std::size_t t) {
  if (strategy == Strategy::naive) t = 1;
  if (t == 0) t = default_tile(k);
  require_geometry(k, t);

  AccessCostReport report{strategy, k, t, 0, 0};
  RowSpanCounter writes(k);
  RowSpanCounter reads(k);
  if (strategy == Strategy::naive) {
    // Source written row-major into a row-major image, then read by columns.
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) writes.touch(i * k + j);
    }
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < k; ++i) reads.touch(i * k + j);
    }
  } else {
    const BlockedSchedule schedule{k, t};
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) writes.touch(schedule.tiled_address(i, j));
    }
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < k; ++i) reads.touch(schedule.tiled_address(i, j));
    }
  }
  report.write_events = writes.events();
  report.read_events = reads.events();
  return report;
}

void print_cost_report(std::ostream& out, const AccessCostReport& report) {
  out << "row-span model  strategy=" << to_string(report.strategy)
      << " k=" << report.k << " t=" << report.t
      << " write=" << report.write_events << " read=" << report.read_events
      << " total=" << report.total() << '\n';
}

}  // namespace qpa::transpose
