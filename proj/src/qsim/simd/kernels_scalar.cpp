#include "qsim/simd.hpp"

#include <bit>

namespace qsim::simd {
namespace {

void axpy_s(cx a, const cx* x, cx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal_s(cx a, cx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

cx dotc_s(const cx* x, const cx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const cx v = std::conj(x[i]) * y[i];
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

double nrm2sq_s(const cx* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void apply1q_s(cx* amps, std::size_t n, int target, const cx* u) {
  const std::size_t s = std::size_t{1} << target;
  for (std::size_t base = 0; base < n; base += 2 * s) {
    for (std::size_t j = 0; j < s; ++j) {
      const std::size_t i0 = base + j;
      const cx a = amps[i0], b = amps[i0 + s];
      amps[i0] = u[0] * a + u[1] * b;
      amps[i0 + s] = u[2] * a + u[3] * b;
    }
  }
}

void phase_flip_all_set_s(cx* amps, std::size_t n, std::uint64_t mask) {
  for (std::size_t i = 0; i < n; ++i)
    if ((i & mask) == mask) amps[i] = -amps[i];
}

void term_accum_s(cx* y, const cx* x, std::size_t n, std::uint64_t xmask,
                  std::uint64_t zmask, cx coeff) {
  for (std::size_t i = 0; i < n; ++i) {
    const cx c = (std::popcount(i & zmask) & 1) ? -coeff : coeff;
    y[i ^ xmask] += c * x[i];
  }
}

cx term_expect_s(const cx* x, std::size_t n, std::uint64_t xmask,
                 std::uint64_t zmask) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cx v = std::conj(x[i ^ xmask]) * x[i];
    if (std::popcount(i & zmask) & 1) v = -v;
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

void applykq_s(cx* amps, std::size_t n, const int* targets, int k,
               const cx* u) {
  const int dim = 1 << k;
  std::uint64_t tmask = 0;
  std::size_t stride[16];
  for (int t = 0; t < k; ++t) {
    stride[t] = std::size_t{1} << targets[t];
    tmask |= stride[t];
  }
  // Offsets of the 2^k group members relative to the group base.
  std::size_t off[1 << 8];
  for (int g = 0; g < dim; ++g) {
    std::size_t o = 0;
    for (int t = 0; t < k; ++t)
      if (g & (1 << t)) o |= stride[t];
    off[g] = o;
  }
  cx in[1 << 8], out[1 << 8];
  for (std::size_t base = 0; base < n; ++base) {
    if (base & tmask) continue;  // enumerate group bases only
    for (int g = 0; g < dim; ++g) in[g] = amps[base + off[g]];
    for (int r = 0; r < dim; ++r) {
      cx acc = 0.0;
      const cx* row = u + std::size_t(r) * dim;
      for (int c = 0; c < dim; ++c) acc += row[c] * in[c];
      out[r] = acc;
    }
    for (int g = 0; g < dim; ++g) amps[base + off[g]] = out[g];
  }
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k = {
      "scalar",     axpy_s,        scal_s,   dotc_s,    nrm2sq_s,
      apply1q_s,    phase_flip_all_set_s,    term_accum_s,
      term_expect_s, applykq_s,
  };
  return k;
}

}  // namespace qsim::simd
