#include <string>

#include "complex_ops.hpp"
#include "qpa/errors.hpp"
#include "qpa/fft.hpp"

namespace qpa::fft {
namespace {

template <typename A, typename B>
void require_same_length(const A& a, const B& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionError(std::string(what) + ": lengths " +
                         std::to_string(a.size()) + " and " +
                         std::to_string(b.size()) + " differ");
  }
}

}  // namespace

ComplexBuffer real_pack(std::span<const double> x, std::span<const double> v) {
  require_same_length(x, v, "real_pack");
  ComplexBuffer z(x.size());
  for (std::size_t p = 0; p < x.size(); ++p) z[p] = {x[p], v[p]};
  return z;
}

UnpackedSpectra real_unpack_spectra(std::span<const Complex> z) {
  const std::size_t n = z.size();
  UnpackedSpectra out{ComplexBuffer(n), ComplexBuffer(n)};
  for (std::size_t f = 0; f < n; ++f) {
    const Complex a = z[f];
    const Complex b = z[(n - f) % n];
    out.x[f] = {0.5 * (a.real() + b.real()), 0.5 * (a.imag() - b.imag())};
    out.v[f] = {0.5 * (a.imag() + b.imag()), 0.5 * (b.real() - a.real())};
  }
  return out;
}

ComplexBuffer pointwise_multiply(std::span<const Complex> a,
                                 std::span<const Complex> b) {
  require_same_length(a, b, "pointwise_multiply");
  ComplexBuffer out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = detail::mul(a[i], b[i]);
  return out;
}

void multiply_packed_spectra(std::span<Complex> z, Variant order, Execution exec) {
  const std::size_t n = z.size();
  const MatrixLayout layout = MatrixLayout::for_length(n);
  const std::size_t k = layout.k;
  const std::size_t mask = k - 1;
  // Physical slot holding frequency -f for the frequency f stored in slot q.
  // Permuted: slot (row b, col a) holds f = a*k + b, so -f sits at
  // (0, -a mod k) when b == 0 and at (k - b, k - 1 - a) otherwise.
  const auto partner = [&](std::size_t q) -> std::size_t {
    if (order == Variant::natural) return (n - q) & (n - 1);
    const std::size_t b = q >> layout.shift;
    const std::size_t a = q & mask;
    if (b == 0) return (k - a) & mask;
    return layout.index(k - b, k - 1 - a);
  };

  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (use_threads(exec))
  for (std::ptrdiff_t sq = 0; sq < count; ++sq) {
    const auto q = static_cast<std::size_t>(sq);
    const std::size_t pq = partner(q);
    if (pq < q) continue;  // handled together with its partner
    const Complex a = z[q];
    const Complex b = z[pq];
    const Complex x{0.5 * (a.real() + b.real()), 0.5 * (a.imag() - b.imag())};
    const Complex v{0.5 * (a.imag() + b.imag()), 0.5 * (b.real() - a.real())};
    const Complex product = detail::mul(x, v);
    // Both halves are real sequences, so their product spectrum is Hermitian.
    z[q] = product;
    z[pq] = std::conj(product);
  }
}

}  // namespace qpa::fft
