#include "qpa/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "qpa/bit_file.hpp"
#include "qpa/oracle.hpp"
#include "qpa/seed.hpp"
#include "support/reference.hpp"

namespace qpa::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kSecret =
    "000102030405060708090a0b0c0d0e0f101112131415161718191a1b1c1d1e1f";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qpa_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int invoke(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }

  BitVector write_raw(const std::string& name, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto bits = qpa::testing::random_bits(n, rng);
    write_bits(path(name), bits, BitRole::raw_key);
    return bits;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, ZeroSeedFileKeepsHead) {
  const auto raw = write_raw("raw.qpa", 1024, 1);
  write_bits(path("seed.qpa"), BitVector(1023), BitRole::seed);
  ASSERT_EQ(invoke({"run", "--input", path("raw.qpa"), "--seed-file", path("seed.qpa"),
                    "--r", "300", "--output", path("final.qpa")}),
            kOk)
      << err_.str();
  const auto final_key = read_bit_file(path("final.qpa"), BitRole::final_key);
  EXPECT_EQ(final_key.bits, raw.slice(0, 300));
}

TEST_F(CliTest, RunThenVerifyAndManifest) {
  write_raw("raw.qpa", 4096, 2);
  ASSERT_EQ(invoke({"run", "--input", path("raw.qpa"), "--secret", kSecret, "--t", "1000",
                    "--s", "96", "--output", path("final.qpa")}),
            kOk)
      << err_.str();
  EXPECT_EQ(read_bit_file(path("final.qpa")).bits.size(), 3000u);
  std::ifstream manifest(path("final.qpa") + ".manifest");
  std::stringstream text;
  text << manifest.rdbuf();
  EXPECT_NE(text.str().find("s=96\n"), std::string::npos);
  EXPECT_NE(text.str().find("residual="), std::string::npos);

  EXPECT_EQ(invoke({"verify", "--input", path("raw.qpa"), "--secret", kSecret, "--final",
                    path("final.qpa")}),
            kOk)
      << err_.str();
}

TEST_F(CliTest, ModesProduceByteIdenticalFiles) {
  write_raw("raw.qpa", 4096, 3);
  ASSERT_EQ(invoke({"run", "--input", path("raw.qpa"), "--secret", kSecret, "--r", "2000",
                    "--mode", "A", "--output", path("a.qpa")}),
            kOk);
  ASSERT_EQ(invoke({"run", "--input", path("raw.qpa"), "--secret", kSecret, "--r", "2000",
                    "--mode", "B", "--output", path("b.qpa")}),
            kOk);
  std::ifstream a(path("a.qpa"), std::ios::binary);
  std::ifstream b(path("b.qpa"), std::ios::binary);
  const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
  const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
  EXPECT_EQ(bytes_a, bytes_b);
}

TEST_F(CliTest, VerifyReportsFlippedBit) {
  const auto raw = write_raw("raw.qpa", 1024, 4);
  ASSERT_EQ(invoke({"gen-seed", "--secret", kSecret, "--n", "1024", "--output",
                    path("seed.qpa")}),
            kOk);
  ASSERT_EQ(invoke({"run", "--input", path("raw.qpa"), "--seed-file", path("seed.qpa"),
                    "--r", "500", "--output", path("final.qpa")}),
            kOk);
  auto key = read_bit_file(path("final.qpa")).bits;
  key.flip(123);
  write_bits(path("bad.qpa"), key, BitRole::final_key);
  EXPECT_EQ(invoke({"verify", "--input", path("raw.qpa"), "--seed-file", path("seed.qpa"),
                    "--final", path("bad.qpa")}),
            kMismatch);
  EXPECT_NE(err_.str().find("123"), std::string::npos);
}

TEST_F(CliTest, VerifySamplesLargeBlocks) {
  write_raw("raw.qpa", 65536, 5);
  ASSERT_EQ(invoke({"run", "--input", path("raw.qpa"), "--secret", kSecret, "--r", "30000",
                    "--output", path("final.qpa")}),
            kOk);
  EXPECT_EQ(invoke({"verify", "--input", path("raw.qpa"), "--secret", kSecret, "--final",
                    path("final.qpa"), "--samples", "64", "--rng-seed", "9"}),
            kOk)
      << err_.str();
  EXPECT_NE(out_.str().find("64 sampled"), std::string::npos);
}

TEST_F(CliTest, FormatErrorsExitTwo) {
  write_raw("raw.qpa", 1024, 6);
  write_bits(path("seed256.qpa"), BitVector(255), BitRole::seed);
  EXPECT_EQ(invoke({"run", "--input", path("raw.qpa"), "--seed-file", path("seed256.qpa"),
                    "--r", "100", "--output", path("final.qpa")}),
            kFormatError);
  EXPECT_EQ(invoke({"verify", "--input", path("raw.qpa"), "--seed-file", path("seed256.qpa"),
                    "--final", path("raw.qpa")}),
            kFormatError);
  std::ofstream(path("junk.qpa")) << "not a key";
  EXPECT_EQ(invoke({"run", "--input", path("junk.qpa"), "--secret", kSecret, "--r", "10",
                    "--output", path("final.qpa")}),
            kFormatError);
  // Seed file passed where a raw key is expected.
  EXPECT_EQ(invoke({"run", "--input", path("seed256.qpa"), "--secret", kSecret, "--r", "10",
                    "--output", path("final.qpa")}),
            kFormatError);
}

TEST_F(CliTest, ParameterErrorsExitThree) {
  write_raw("raw.qpa", 1024, 7);
  const std::vector<std::string> base{"run", "--input", path("raw.qpa"), "--secret", kSecret,
                                      "--output", path("final.qpa")};
  auto with = [&](std::vector<std::string> extra) {
    auto args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return invoke(args);
  };
  EXPECT_EQ(with({"--t", "1000", "--s", "100"}), kParameterError);
  EXPECT_EQ(with({"--r", "1024"}), kParameterError);
  EXPECT_EQ(with({"--r", "10", "--t", "5", "--s", "5"}), kParameterError);
  EXPECT_EQ(with({}), kParameterError);
  EXPECT_EQ(with({"--r", "900", "--min-security", "200"}), kParameterError);
  EXPECT_EQ(with({"--r", "10", "--mode", "C"}), kParameterError);
  write_raw("raw1000.qpa", 1000, 8);
  EXPECT_EQ(invoke({"run", "--input", path("raw1000.qpa"), "--secret", kSecret, "--r", "10",
                    "--output", path("final.qpa")}),
            kParameterError);
  EXPECT_EQ(invoke({"gen-seed", "--secret", kSecret, "--n", "1000", "--output",
                    path("s.qpa")}),
            kParameterError);
  EXPECT_EQ(invoke({"frobnicate"}), kParameterError);
}

TEST_F(CliTest, GenSeedIsDeterministic) {
  ASSERT_EQ(invoke({"gen-seed", "--secret", kSecret, "--n", "4096", "--output", path("a.qpa")}),
            kOk);
  ASSERT_EQ(invoke({"gen-seed", "--secret", kSecret, "--n", "4096", "--output", path("b.qpa")}),
            kOk);
  const auto a = read_bit_file(path("a.qpa"), BitRole::seed);
  EXPECT_EQ(a.bits.size(), 4095u);
  EXPECT_EQ(a.bits, read_bit_file(path("b.qpa"), BitRole::seed).bits);
  EXPECT_EQ(a.bits, generate_seed(parse_master_secret(kSecret), 4096).bits());
}

TEST_F(CliTest, ParamsTable) {
  ASSERT_EQ(invoke({"params", "--n", "1048576", "--t", "524288", "--s-min", "64", "--s-max",
                    "64"}),
            kOk);
  EXPECT_NE(out_.str().find("524224"), std::string::npos);
  EXPECT_EQ(invoke({"params", "--n", "100", "--t", "100"}), kParameterError);
}

TEST_F(CliTest, BenchPrintsStagesAndModel) {
  ASSERT_EQ(invoke({"bench", "--n", "4096", "--repetitions", "1", "--report",
                    path("bench.kv")}),
            kOk);
  const auto text = out_.str();
  for (const char* stage : {"pack", "forward", "multiply", "inverse", "extract"}) {
    std::size_t count = 0;
    for (auto pos = text.find(stage); pos != std::string::npos; pos = text.find(stage, pos + 1)) {
      ++count;
    }
    EXPECT_EQ(count, 2u) << stage;  // one row per mode for a single repetition
  }
  EXPECT_NE(text.find("total=4160"), std::string::npos);
  std::ifstream kv(path("bench.kv"));
  std::stringstream body;
  body << kv.rdbuf();
  EXPECT_NE(body.str().find("mode_B_transposes=2"), std::string::npos);
  EXPECT_NE(body.str().find("row_span_naive=4160"), std::string::npos);
  // k=64 with the default tile t=4: 4*64 writes + 64*64/4 reads.
  EXPECT_NE(body.str().find("row_span_blocked=1280"), std::string::npos);
}

TEST_F(CliTest, HelpExitsZero) {
  EXPECT_EQ(invoke({"--help"}), kOk);
  EXPECT_NE(out_.str().find("run"), std::string::npos);
}

}  // namespace
}  // namespace qpa::cli
