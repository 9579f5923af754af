#include <fstream>
#include <iomanip>
#include <ostream>

#include "qpa/errors.hpp"
#include "qpa/pipeline.hpp"

namespace qpa::pipeline {

void write_manifest(std::ostream& out, const PaParams& params,
                    const FinalKey& key) {
  const auto flags = out.flags();
  out << "n=" << params.n << '\n'
      << "r=" << params.r << '\n'
      << "t=" << params.t << '\n'
      << "s=" << params.s << '\n'
      << "leakage_bound=" << std::scientific << std::setprecision(6)
      << params.leakage() << '\n'
      << "mode=" << to_string(key.mode) << '\n'
      << "residual=" << key.residual << '\n'
      << std::fixed << std::setprecision(3)
      << "pack_ms=" << key.timings.pack_ms << '\n'
      << "forward_ms=" << key.timings.forward_ms << '\n'
      << "multiply_ms=" << key.timings.multiply_ms << '\n'
      << "inverse_ms=" << key.timings.inverse_ms << '\n'
      << "extract_ms=" << key.timings.extract_ms << '\n'
      << "total_ms=" << key.timings.total_ms() << '\n'
      << "transposes=" << key.stats.transposes << '\n'
      << "row_transforms=" << key.stats.row_transforms << '\n'
      << '\n';
  out.flags(flags);
}

void append_manifest(const std::filesystem::path& path, const PaParams& params,
                     const FinalKey& key) {
  std::ofstream out(path, std::ios::app);
  if (!out) throw FormatError("cannot open manifest " + path.string());
  write_manifest(out, params, key);
}

}  // namespace qpa::pipeline
