#include <chrono>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>

#include "qpa/transpose.hpp"

namespace qpa::transpose {
namespace {

template <typename Fn>
double best_seconds(std::size_t repetitions, Fn&& fn) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t rep = 0; rep < repetitions; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

}  // namespace

TransposeBenchReport bench_transpose(std::size_t k, std::size_t t,
                                     std::size_t repetitions, Execution exec) {
  if (t == 0) t = default_tile(k);
  require_geometry(k, t);
  if (repetitions == 0) repetitions = 1;

  Matrix<std::uint64_t> source(k, k);
  std::mt19937_64 rng(k * 31 + t);
  for (auto& v : source.data) v = rng();

  TransposeBenchReport report;
  report.k = k;
  report.t = t;
  report.repetitions = repetitions;
  report.outputs_equal =
      transpose_naive(source, exec) == transpose_blocked(source, t, exec);

  Matrix<std::uint64_t> sink;
  report.naive_seconds =
      best_seconds(repetitions, [&] { sink = transpose_naive(source, exec); });
  report.blocked_seconds =
      best_seconds(repetitions, [&] { sink = transpose_blocked(source, t, exec); });
  return report;
}

void print_bench_report(std::ostream& out, const TransposeBenchReport& r) {
  const auto flags = out.flags();
  out << "transpose k=" << r.k << " t=" << r.t << " data=" << std::fixed
      << std::setprecision(1) << r.data_megabits() << "Mb element_bits=" << r.element_bits
      << " outputs_equal=" << (r.outputs_equal ? "yes" : "no") << '\n';
  out << std::setprecision(3);
  out << "  naive    " << std::setw(10) << r.naive_seconds * 1e3 << " ms  "
      << std::setw(8) << r.naive_gbps() << " Gbps\n";
  out << "  blocked  " << std::setw(10) << r.blocked_seconds * 1e3 << " ms  "
      << std::setw(8) << r.blocked_gbps() << " Gbps\n";
  out.flags(flags);
}

}  // namespace qpa::transpose
