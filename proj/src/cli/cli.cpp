#include "qpa/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <random>

#include "qpa/bit_file.hpp"
#include "qpa/errors.hpp"
#include "qpa/oracle.hpp"
#include "qpa/params.hpp"
#include "qpa/pipeline.hpp"
#include "qpa/seed.hpp"
#include "qpa/transpose.hpp"

namespace qpa::cli {
namespace {

// Full oracle comparison below this block length, sampling above it.
constexpr std::size_t kFullVerifyLimit = 4096;

struct SeedSource {
  std::string seed_file;
  std::string secret_hex;

  void add_to(CLI::App* app) {
    auto* file = app->add_option("--seed-file", seed_file, "QPA1 seed file (role=seed)");
    auto* secret = app->add_option("--secret", secret_hex,
                                   "64 hex digit master secret expanded with ChaCha20");
    file->excludes(secret);
  }

  ToeplitzSeed load(std::size_t n) const {
    if (!seed_file.empty()) {
      auto file = read_bit_file(seed_file, BitRole::seed);
      if (file.bits.size() + 1 != n) {
        throw FormatError("seed file holds " + std::to_string(file.bits.size()) +
                          " bits, block length n=" + std::to_string(n) +
                          " needs " + std::to_string(n - 1));
      }
      return ToeplitzSeed(std::move(file.bits), n);
    }
    if (!secret_hex.empty()) return generate_seed(parse_master_secret(secret_hex), n);
    throw ParameterError("either --seed-file or --secret is required");
  }
};

struct RunArgs {
  std::string input;
  std::string output;
  std::string manifest;
  SeedSource seed;
  std::optional<std::size_t> r;
  std::optional<std::size_t> t;
  std::optional<std::size_t> s;
  std::string mode = "B";
  std::size_t min_security = 1;
  bool serial = false;
};

struct VerifyArgs {
  std::string input;
  std::string final_key;
  SeedSource seed;
  std::size_t samples = 256;
  std::optional<std::uint64_t> rng_seed;
};

struct BenchArgs {
  std::size_t n = std::size_t{1} << 20;
  std::size_t tile = 0;
  std::size_t repetitions = 3;
  std::string report;
  bool serial = false;
};

struct GenSeedArgs {
  std::string secret_hex;
  std::size_t n = 0;
  std::string output;
};

struct ParamsArgs {
  std::size_t n = 0;
  std::size_t t = 0;
  std::size_t s_min = 1;
  std::optional<std::size_t> s_max;
  std::size_t s_step = 0;
};

PaParams resolve_params(const RunArgs& a, std::size_t n) {
  if (a.r && (a.t || a.s)) {
    throw ParameterError("give either --r or --t with --s, not both");
  }
  if (a.r) return PaParams::from_key_length(n, *a.r, 0);
  if (a.t && a.s) return PaParams::from_security(n, *a.t, *a.s);
  throw ParameterError("final key length needs --r, or --t together with --s");
}

int cmd_run(const RunArgs& a, std::ostream& out) {
  auto raw = read_bit_file(a.input, BitRole::raw_key);
  const std::size_t n = raw.bits.size();
  require_supported_length(n);
  const PaParams params = resolve_params(a, n);
  params.validate(a.min_security);
  const ToeplitzSeed seed = a.seed.load(n);

  pipeline::Options options;
  options.mode = pipeline::parse_mode(a.mode);
  options.exec = a.serial ? Execution::serial : Execution::parallel;
  options.min_security = a.min_security;
  const auto key = pipeline::privacy_amplify(raw.bits, seed, params, options);

  write_bits(a.output, key.bits, BitRole::final_key);
  const std::string manifest = a.manifest.empty() ? a.output + ".manifest" : a.manifest;
  pipeline::append_manifest(manifest, params, key);
  out << "wrote " << params.r << "-bit final key to " << a.output << " (mode "
      << pipeline::to_string(key.mode) << ", residual " << std::scientific
      << std::setprecision(3) << key.residual << std::defaultfloat << ", "
      << std::fixed << std::setprecision(3) << key.timings.total_ms()
      << " ms)\n"
      << std::defaultfloat;
  return kOk;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  auto raw = read_bit_file(a.input, BitRole::raw_key);
  const std::size_t n = raw.bits.size();
  require_supported_length(n);
  const ToeplitzSeed seed = a.seed.load(n);
  auto final_key = read_bit_file(a.final_key, BitRole::final_key);
  const std::size_t r = final_key.bits.size();
  if (r == 0 || r >= n) {
    throw FormatError("final key of " + std::to_string(r) +
                      " bits does not fit block length n=" + std::to_string(n));
  }

  if (n <= kFullVerifyLimit) {
    const BitVector expected = oracle::hash_direct(raw.bits, seed, r);
    for (std::size_t i = 0; i < r; ++i) {
      if (expected.get(i) != final_key.bits.get(i)) {
        err << "mismatch at final key bit " << i << '\n';
        return kMismatch;
      }
    }
    out << "verified all " << r << " bits against the GF(2) oracle\n";
    return kOk;
  }

  std::mt19937_64 rng(a.rng_seed ? *a.rng_seed : std::random_device{}());
  std::uniform_int_distribution<std::size_t> pick(0, r - 1);
  std::vector<std::size_t> rows(std::max<std::size_t>(a.samples, 1));
  for (auto& i : rows) i = pick(rng);
  std::sort(rows.begin(), rows.end());
  for (std::size_t i : rows) {
    if (oracle::hash_single_bit(raw.bits, seed, r, i) != final_key.bits.get(i)) {
      err << "mismatch at final key bit " << i << '\n';
      return kMismatch;
    }
  }
  out << "verified " << rows.size() << " sampled bits against the GF(2) oracle\n";
  return kOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  const std::size_t n = a.n;
  require_supported_length(n);
  const std::size_t k = side_length(n);
  const std::size_t tile = a.tile == 0 ? transpose::default_tile(k) : a.tile;
  transpose::require_geometry(k, tile);
  const std::size_t reps = std::max<std::size_t>(a.repetitions, 1);
  const Execution exec = a.serial ? Execution::serial : Execution::parallel;

  std::mt19937_64 rng(n);
  BitVector x(n);
  BitVector v(n - 1);
  for (auto& w : x.mutable_words()) w = rng();
  for (auto& w : v.mutable_words()) w = rng();
  x.clear_padding();
  v.clear_padding();
  const ToeplitzSeed seed(std::move(v), n);
  const PaParams params = PaParams::from_key_length(n, n / 2);

  std::ofstream report;
  if (!a.report.empty()) {
    report.open(a.report, std::ios::trunc);
    if (!report) throw FormatError("cannot open report " + a.report);
  }
  const auto kv = [&](const std::string& key, const auto& value) {
    if (report.is_open()) report << key << '=' << value << '\n';
  };

  out << "bench n=" << n << " k=" << k << " r=" << params.r
      << " threads=" << (a.serial ? 1 : max_threads()) << " repetitions=" << reps
      << '\n';
  kv("n", n);
  kv("k", k);
  out << std::fixed << std::setprecision(3);
  out << "mode rep  stage      ms\n";
  for (const auto mode : {pipeline::Mode::natural, pipeline::Mode::permuted}) {
    pipeline::Options options;
    options.mode = mode;
    options.exec = exec;
    pipeline::privacy_amplify(x, seed, params, options);  // warm plan cache
    double best = std::numeric_limits<double>::infinity();
    std::size_t transposes = 0;
    for (std::size_t rep = 1; rep <= reps; ++rep) {
      const auto key = pipeline::privacy_amplify(x, seed, params, options);
      const auto& t = key.timings;
      const std::pair<const char*, double> stages[] = {
          {"pack", t.pack_ms},       {"forward", t.forward_ms},
          {"multiply", t.multiply_ms}, {"inverse", t.inverse_ms},
          {"extract", t.extract_ms}};
      for (const auto& [name, ms] : stages) {
        out << pipeline::to_string(mode) << "    " << std::setw(3) << rep << "  "
            << std::left << std::setw(9) << name << std::right << std::setw(9)
            << ms << '\n';
      }
      best = std::min(best, t.total_ms());
      transposes = key.stats.transposes;
    }
    const double mbps = static_cast<double>(n) / (best * 1e-3) / 1e6;
    out << "mode " << pipeline::to_string(mode) << " best " << best << " ms  "
        << mbps << " Mbps  transposes/convolution=" << transposes << '\n';
    const std::string prefix = std::string("mode_") + pipeline::to_string(mode);
    kv(prefix + "_best_ms", best);
    kv(prefix + "_mbps", mbps);
    kv(prefix + "_transposes", transposes);
  }
  out << std::defaultfloat;

  const auto tb = transpose::bench_transpose(k, tile, reps, exec);
  transpose::print_bench_report(out, tb);
  kv("transpose_tile", tile);
  kv("transpose_naive_gbps", tb.naive_gbps());
  kv("transpose_blocked_gbps", tb.blocked_gbps());

  const auto naive = transpose::simulate_row_spans(transpose::Strategy::naive, k);
  const auto blocked =
      transpose::simulate_row_spans(transpose::Strategy::blocked, k, tile);
  transpose::print_cost_report(out, naive);
  transpose::print_cost_report(out, blocked);
  kv("row_span_naive", naive.total());
  kv("row_span_blocked", blocked.total());
  return kOk;
}

int cmd_gen_seed(const GenSeedArgs& a, std::ostream& out) {
  require_supported_length(a.n);
  const auto seed = generate_seed(parse_master_secret(a.secret_hex), a.n);
  write_bits(a.output, seed.bits(), BitRole::seed);
  out << "wrote " << seed.bits().size() << "-bit seed for n=" << a.n << " to "
      << a.output << '\n';
  return kOk;
}

int cmd_params(const ParamsArgs& a, std::ostream& out) {
  if (a.t >= a.n || a.n - a.t < 2) {
    throw ParameterError("need t < n - 1 for any feasible key");
  }
  const std::size_t s_cap = a.n - a.t - 1;
  const std::size_t s_max = std::min(a.s_max.value_or(std::min<std::size_t>(s_cap, 256)), s_cap);
  if (a.s_min < 1 || a.s_min > s_max) {
    throw ParameterError("empty security range [" + std::to_string(a.s_min) +
                         ", " + std::to_string(s_max) + "]");
  }
  const std::size_t step =
      a.s_step != 0 ? a.s_step : std::max<std::size_t>(1, (s_max - a.s_min) / 16);
  out << "n=" << a.n << " t=" << a.t << '\n';
  out << std::setw(10) << "s" << std::setw(12) << "r" << "  leakage_bound\n";
  for (std::size_t s = a.s_min; s <= s_max; s += step) {
    out << std::setw(10) << s << std::setw(12) << final_key_length(a.n, a.t, s)
        << "  " << std::scientific << std::setprecision(6) << leakage_bound(static_cast<double>(s))
        << std::defaultfloat << '\n';
    if (s_max - s < step) break;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Privacy amplification with FFT-accelerated modified Toeplitz hashing"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Distill a final key from a raw key");
  run_cmd->add_option("--input", run_args.input, "raw key file (role=raw)")->required();
  run_cmd->add_option("--output", run_args.output, "final key file to write")->required();
  run_cmd->add_option("--manifest", run_args.manifest,
                      "manifest file to append to (default: <output>.manifest)");
  run_args.seed.add_to(run_cmd);
  run_cmd->add_option("--r", run_args.r, "final key length in bits");
  run_cmd->add_option("--t", run_args.t, "eavesdropper information in bits");
  run_cmd->add_option("--s", run_args.s, "security coefficient in bits");
  run_cmd->add_option("--mode", run_args.mode, "A (natural order) or B (permuted order)")
      ->capture_default_str();
  run_cmd->add_option("--min-security", run_args.min_security,
                      "reject runs whose s = n - t - r is below this")
      ->capture_default_str();
  run_cmd->add_flag("--serial", run_args.serial, "disable OpenMP kernels");

  VerifyArgs verify_args;
  auto* verify_cmd =
      app.add_subcommand("verify", "Check a final key against the GF(2) oracle");
  verify_cmd->add_option("--input", verify_args.input, "raw key file")->required();
  verify_cmd->add_option("--final", verify_args.final_key, "final key file")->required();
  verify_args.seed.add_to(verify_cmd);
  verify_cmd->add_option("--samples", verify_args.samples,
                         "bits to spot-check when n > 4096")
      ->capture_default_str();
  verify_cmd->add_option("--rng-seed", verify_args.rng_seed,
                         "seed for choosing sampled bits");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Time the pipeline and transposes");
  bench_cmd->add_option("--n", bench_args.n, "block length")->capture_default_str();
  bench_cmd->add_option("--tile", bench_args.tile, "transpose tile (0 = default)");
  bench_cmd->add_option("--repetitions", bench_args.repetitions, "timed repetitions")
      ->capture_default_str();
  bench_cmd->add_option("--report", bench_args.report, "key=value report file");
  bench_cmd->add_flag("--serial", bench_args.serial, "disable OpenMP kernels");

  GenSeedArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen-seed", "Expand a master secret into a seed file");
  gen_cmd->add_option("--secret", gen_args.secret_hex, "64 hex digit master secret")
      ->required();
  gen_cmd->add_option("--n", gen_args.n, "block length")->required();
  gen_cmd->add_option("--output", gen_args.output, "seed file to write")->required();

  ParamsArgs params_args;
  auto* params_cmd =
      app.add_subcommand("params", "Tabulate r and the leakage bound over s");
  params_cmd->add_option("--n", params_args.n, "block length")->required();
  params_cmd->add_option("--t", params_args.t, "eavesdropper information in bits")
      ->capture_default_str();
  params_cmd->add_option("--s-min", params_args.s_min, "smallest s")->capture_default_str();
  params_cmd->add_option("--s-max", params_args.s_max, "largest s");
  params_cmd->add_option("--s-step", params_args.s_step, "step in s (0 = auto)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParameterError;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_args, out);
    if (verify_cmd->parsed()) return cmd_verify(verify_args, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench_args, out);
    if (gen_cmd->parsed()) return cmd_gen_seed(gen_args, out);
    if (params_cmd->parsed()) return cmd_params(params_args, out);
  } catch (const PrecisionError& e) {
    err << "precision failure: " << e.what() << '\n';
    return kPrecisionError;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kParameterError;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kFormatError;
  } catch (const DimensionError& e) {
    err << "format error: " << e.what() << '\n';
    return kFormatError;
  }
  return kParameterError;
}

}  // namespace qpa::cli
