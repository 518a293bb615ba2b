#pragma once

// Runtime-dispatched arithmetic kernels for state-vector simulation.
//
// Every kernel has a scalar reference implementation and (on x86-64 with
// AVX2+FMA) a vectorized variant. The active table is chosen once at startup
// from CPUID and can be overridden with set_kernel_mode() or the QSIM_SIMD
// environment variable ("scalar", "avx2", "auto"). Scalar and SIMD variants
// are equivalence-tested against each other in tests/test_kernels.cpp.

#include <complex>
#include <cstddef>
#include <cstdint>

namespace qsim::simd {

using cx = std::complex<double>;

struct Kernels {
  const char* name;

  // y[i] += a * x[i]
  void (*axpy)(cx a, const cx* x, cx* y, std::size_t n);
  // x[i] *= a
  void (*scal)(cx a, cx* x, std::size_t n);
  // sum_i conj(x[i]) * y[i]
  cx (*dotc)(const cx* x, const cx* y, std::size_t n);
  // sum_i |x[i]|^2
  double (*nrm2sq)(const cx* x, std::size_t n);

  // In-place single-qubit gate, u row-major 2x2, target = bit index.
  void (*apply1q)(cx* amps, std::size_t n, int target, const cx* u);

  // amps[i] *= -1 for all i with (i & mask) == mask  (CZ / CCZ family).
  void (*phase_flip_all_set)(cx* amps, std::size_t n, std::uint64_t mask);

  // y[i ^ xmask] += coeff * (-1)^popcount(i & zmask) * x[i]
  // (one Pauli-string term of a matrix-free Hamiltonian; x != y)
  void (*term_accum)(cx* y, const cx* x, std::size_t n, std::uint64_t xmask,
                     std::uint64_t zmask, cx coeff);

  // sum_i conj(x[i ^ xmask]) * (-1)^popcount(i & zmask) * x[i]
  cx (*term_expect)(const cx* x, std::size_t n, std::uint64_t xmask,
                    std::uint64_t zmask);

  // In-place k-qubit gate; targets strictly increasing bit indices,
  // u row-major (1<<k) x (1<<k).
  void (*applykq)(cx* amps, std::size_t n, const int* targets, int k,
                  const cx* u);
};

const Kernels& scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
const Kernels& avx2_kernels();
#endif

// Active table (set once on first use; thread-safe).
const Kernels& active();

// mode: "auto" | "scalar" | "avx2". Returns false if unavailable on this CPU.
bool set_kernel_mode(const char* mode);

bool cpu_has_avx2();

}  // namespace qsim::simd
