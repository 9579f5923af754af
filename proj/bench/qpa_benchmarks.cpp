#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>

#include "qpa/fft.hpp"
#include "qpa/oracle.hpp"
#include "qpa/pipeline.hpp"
#include "qpa/transpose.hpp"

namespace {

using namespace qpa;

BitVector random_bits(std::size_t n, std::uint64_t s) {
  std::mt19937_64 rng(s);
  BitVector v(n);
  for (auto& w : v.mutable_words()) w = rng();
  v.clear_padding();
  return v;
}

ToeplitzSeed random_seed(std::size_t n, std::uint64_t s) {
  return ToeplitzSeed(random_bits(n - 1, s), n);
}

Execution exec_arg(const benchmark::State& state, int index) {
  return state.range(index) != 0 ? Execution::parallel : Execution::serial;
}

void BM_Transpose(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  const bool blocked = state.range(1) != 0;
  const auto exec = exec_arg(state, 2);
  transpose::Matrix<std::uint64_t> m(k, k);
  std::mt19937_64 rng(1);
  for (auto& e : m.data) e = rng();
  for (auto _ : state) {
    auto out = blocked ? transpose::transpose_blocked(m, transpose::default_tile(k), exec)
                       : transpose::transpose_naive(m, exec);
    benchmark::DoNotOptimize(out.data.data());
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * k * k * 8));
  state.SetLabel(std::string(blocked ? "blocked" : "naive") +
                 (exec == Execution::parallel ? "/parallel" : "/serial"));
}
BENCHMARK(BM_Transpose)
    ->ArgsProduct({{256, 1024}, {0, 1}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_Fft2d(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto variant = state.range(1) != 0 ? fft::Variant::permuted : fft::Variant::natural;
  const auto exec = exec_arg(state, 2);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  fft::ComplexBuffer data(n);
  for (auto& c : data) c = {d(rng), d(rng)};
  for (auto _ : state) {
    fft::fft2d_in_place(variant, data, fft::Direction::forward, nullptr, exec);
    fft::fft2d_in_place(variant, data, fft::Direction::inverse, nullptr, exec);
    benchmark::DoNotOptimize(data.data());
  }
  state.SetLabel(std::string(variant == fft::Variant::permuted ? "permuted" : "natural") +
                 (exec == Execution::parallel ? "/parallel" : "/serial"));
}
BENCHMARK(BM_Fft2d)
    ->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_HashDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto exec = exec_arg(state, 1);
  const auto x = random_bits(n, 3);
  const auto seed = random_seed(n, 4);
  for (auto _ : state) {
    auto y = oracle::hash_direct(x, seed, n / 2, exec);
    benchmark::DoNotOptimize(y.words().data());
  }
  state.SetLabel(exec == Execution::parallel ? "parallel" : "serial");
}
BENCHMARK(BM_HashDirect)
    ->ArgsProduct({{1 << 12, 1 << 14}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

void BM_PrivacyAmplify(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto mode = state.range(1) != 0 ? pipeline::Mode::permuted : pipeline::Mode::natural;
  const auto exec = exec_arg(state, 2);
  const auto x = random_bits(n, 5);
  const auto seed = random_seed(n, 6);
  const auto params = PaParams::from_key_length(n, n / 2);
  pipeline::Options options;
  options.mode = mode;
  options.exec = exec;
  for (auto _ : state) {
    auto key = pipeline::privacy_amplify(x, seed, params, options);
    benchmark::DoNotOptimize(key.bits.words().data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n));
  state.SetLabel(std::string("mode ") + pipeline::to_string(mode) +
                 (exec == Execution::parallel ? "/parallel" : "/serial"));
}
BENCHMARK(BM_PrivacyAmplify)
    ->ArgsProduct({{1 << 16, 1 << 20}, {0, 1}, {0, 1}})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
