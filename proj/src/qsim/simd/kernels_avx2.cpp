// AVX2+FMA kernel variants. This TU is compiled with -mavx2 -mfma and must
// only be entered after a runtime CPUID check (see dispatch.cpp).

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "qsim/simd.hpp"

namespace qsim::simd {
namespace {

// One __m256d holds two complex doubles [a.re a.im b.re b.im].
// u * v for both complex lanes, u a scalar complex given as (ure, uim).
inline __m256d cmul(__m256d v, double ure, double uim) {
  const __m256d sw = _mm256_permute_pd(v, 0b0101);  // [a.im a.re b.im b.re]
  return _mm256_fmaddsub_pd(v, _mm256_set1_pd(ure),
                            _mm256_mul_pd(sw, _mm256_set1_pd(uim)));
}

inline __m256d cmul_acc(__m256d acc, __m256d v, double ure, double uim) {
  const __m256d sw = _mm256_permute_pd(v, 0b0101);
  const __m256d im = _mm256_mul_pd(sw, _mm256_set1_pd(uim));
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(v, _mm256_set1_pd(ure), im));
}

// Insert a zero bit at each target position of a compressed index.
inline std::size_t expand_index(std::size_t idx, const int* targets, int k) {
  for (int t = 0; t < k; ++t) {
    const std::size_t lo = idx & ((std::size_t{1} << targets[t]) - 1);
    idx = ((idx >> targets[t]) << (targets[t] + 1)) | lo;
  }
  return idx;
}

void axpy_v(cx a, const cx* x, cx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    const __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(y + i),
                     cmul_acc(vy, vx, ar, ai));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scal_v(cx a, cx* x, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    _mm256_storeu_pd(reinterpret_cast<double*>(x + i), cmul(v, ar, ai));
  }
  for (; i < n; ++i) x[i] *= a;
}

cx dotc_v(const cx* x, const cx* y, std::size_t n) {
  // re terms: xr*yr + xi*yi accumulate directly.
  // im terms: accumulate xr*yi in even lanes and xi*yr in odd lanes, combine
  // with alternating signs at the end.
  __m256d re = _mm256_setzero_pd(), im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    const __m256d vy = _mm256_loadu_pd(reinterpret_cast<const double*>(y + i));
    re = _mm256_fmadd_pd(vx, vy, re);
    im = _mm256_fmadd_pd(vx, _mm256_permute_pd(vy, 0b0101), im);
  }
  alignas(32) double r[4], m[4];
  _mm256_store_pd(r, re);
  _mm256_store_pd(m, im);
  double sre = (r[0] + r[1]) + (r[2] + r[3]);
  double sim = (m[0] - m[1]) + (m[2] - m[3]);
  for (; i < n; ++i) {
    sre += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    sim += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {sre, sim};
}

double nrm2sq_v(const cx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(reinterpret_cast<const double*>(x + i));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double r[4];
  _mm256_store_pd(r, acc);
  double s = (r[0] + r[1]) + (r[2] + r[3]);
  for (; i < n; ++i)
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return s;
}

void apply1q_v(cx* amps, std::size_t n, int target, const cx* u) {
  const std::size_t s = std::size_t{1} << target;
  const double u0r = u[0].real(), u0i = u[0].imag();
  const double u1r = u[1].real(), u1i = u[1].imag();
  const double u2r = u[2].real(), u2i = u[2].imag();
  const double u3r = u[3].real(), u3i = u[3].imag();
  if (target == 0) {
    // pairs are adjacent: v = [a.re a.im b.re b.im]
    const __m256d ua_r = _mm256_set_pd(u2r, u2r, u0r, u0r);
    const __m256d ua_i = _mm256_set_pd(u2i, u2i, u0i, u0i);
    const __m256d ub_r = _mm256_set_pd(u3r, u3r, u1r, u1r);
    const __m256d ub_i = _mm256_set_pd(u3i, u3i, u1i, u1i);
    for (std::size_t i = 0; i < n; i += 2) {
      const __m256d v =
          _mm256_loadu_pd(reinterpret_cast<const double*>(amps + i));
      const __m256d va = _mm256_permute2f128_pd(v, v, 0x00);
      const __m256d vb = _mm256_permute2f128_pd(v, v, 0x11);
      __m256d out = _mm256_fmaddsub_pd(
          va, ua_r, _mm256_mul_pd(_mm256_permute_pd(va, 0b0101), ua_i));
      out = _mm256_add_pd(
          out, _mm256_fmaddsub_pd(
                   vb, ub_r,
                   _mm256_mul_pd(_mm256_permute_pd(vb, 0b0101), ub_i)));
      _mm256_storeu_pd(reinterpret_cast<double*>(amps + i), out);
    }
    return;
  }
  for (std::size_t base = 0; base < n; base += 2 * s) {
    for (std::size_t j = 0; j < s; j += 2) {
      double* pa = reinterpret_cast<double*>(amps + base + j);
      double* pb = reinterpret_cast<double*>(amps + base + j + s);
      const __m256d va = _mm256_loadu_pd(pa);
      const __m256d vb = _mm256_loadu_pd(pb);
      _mm256_storeu_pd(pa, cmul_acc(cmul(va, u0r, u0i), vb, u1r, u1i));
      _mm256_storeu_pd(pb, cmul_acc(cmul(va, u2r, u2i), vb, u3r, u3i));
    }
  }
}

void phase_flip_all_set_v(cx* amps, std::size_t n, std::uint64_t mask) {
  const __m256d neg = _mm256_set1_pd(-0.0);
  if (mask == 0) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
      double* p = reinterpret_cast<double*>(amps + i);
      _mm256_storeu_pd(p, _mm256_xor_pd(_mm256_loadu_pd(p), neg));
    }
    for (; i < n; ++i) amps[i] = -amps[i];
    return;
  }
  const int low = std::countr_zero(mask);
  const std::size_t run = std::size_t{1} << low;
  for (std::size_t base = 0; base < n; base += run) {
    if ((base & mask) != mask) continue;
    std::size_t j = 0;
    for (; j + 2 <= run; j += 2) {
      double* p = reinterpret_cast<double*>(amps + base + j);
      _mm256_storeu_pd(p, _mm256_xor_pd(_mm256_loadu_pd(p), neg));
    }
    for (; j < run; ++j) amps[base + j] = -amps[base + j];
  }
}

void term_accum_v(cx* y, const cx* x, std::size_t n, std::uint64_t xmask,
                  std::uint64_t zmask, cx coeff) {
  const std::uint64_t both = xmask | zmask;
  const std::size_t run =
      both ? std::min(n, std::size_t{1} << std::countr_zero(both)) : n;
  for (std::size_t base = 0; base < n; base += run) {
    const cx c = (std::popcount(base & zmask) & 1) ? -coeff : coeff;
    axpy_v(c, x + base, y + (base ^ xmask), run);
  }
}

cx term_expect_v(const cx* x, std::size_t n, std::uint64_t xmask,
                 std::uint64_t zmask) {
  const std::uint64_t both = xmask | zmask;
  const std::size_t run =
      both ? std::min(n, std::size_t{1} << std::countr_zero(both)) : n;
  cx acc = 0.0;
  for (std::size_t base = 0; base < n; base += run) {
    const cx v = dotc_v(x + (base ^ xmask), x + base, run);
    acc += (std::popcount(base & zmask) & 1) ? -v : v;
  }
  return acc;
}

void applykq_v(cx* amps, std::size_t n, const int* targets, int k,
               const cx* u) {
  const int dim = 1 << k;
  std::size_t stride[16];
  for (int t = 0; t < k; ++t) stride[t] = std::size_t{1} << targets[t];
  std::size_t off[1 << 8];
  for (int g = 0; g < dim; ++g) {
    std::size_t o = 0;
    for (int t = 0; t < k; ++t)
      if (g & (1 << t)) o |= stride[t];
    off[g] = o;
  }
  const std::size_t ngroups = n >> k;
  if (targets[0] >= 1) {
    // bit 0 is free: consecutive compressed indices give adjacent bases,
    // process two groups per pass in the two complex lanes
    __m256d in[1 << 8];
    for (std::size_t idx = 0; idx < ngroups; idx += 2) {
      const std::size_t base = expand_index(idx, targets, k);
      for (int g = 0; g < dim; ++g)
        in[g] = _mm256_loadu_pd(
            reinterpret_cast<const double*>(amps + base + off[g]));
      for (int r = 0; r < dim; ++r) {
        const cx* row = u + std::size_t(r) * dim;
        __m256d acc = _mm256_setzero_pd();
        for (int c = 0; c < dim; ++c)
          acc = cmul_acc(acc, in[c], row[c].real(), row[c].imag());
        _mm256_storeu_pd(reinterpret_cast<double*>(amps + base + off[r]), acc);
      }
    }
    return;
  }
  cx in[1 << 8], out[1 << 8];
  for (std::size_t idx = 0; idx < ngroups; ++idx) {
    const std::size_t base = expand_index(idx, targets, k);
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

const Kernels& avx2_kernels() {
  static const Kernels k = {
      "avx2",        axpy_v,        scal_v,   dotc_v,    nrm2sq_v,
      apply1q_v,     phase_flip_all_set_v,    term_accum_v,
      term_expect_v, applykq_v,
  };
  return k;
}

}  // namespace qsim::simd

#endif  // x86-64
