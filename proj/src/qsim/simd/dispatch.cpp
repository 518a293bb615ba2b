#include <atomic>
#include <cstdlib>
#include <cstring>

#include "qsim/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <cpuid.h>
#endif

namespace qsim::simd {
namespace {

std::atomic<const Kernels*> g_active{nullptr};

bool detect_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  unsigned eax, ebx, ecx, edx;
  if (__get_cpuid_max(0, nullptr) < 7) return false;
  __cpuid_count(7, 0, eax, ebx, ecx, edx);
  const bool avx2 = (ebx & (1u << 5)) != 0;
  __cpuid(1, eax, ebx, ecx, edx);
  const bool fma = (ecx & (1u << 12)) != 0;
  const bool osxsave = (ecx & (1u << 27)) != 0;
  if (!osxsave) return false;
  // verify the OS saves ymm state (xgetbv, xcr0)
  std::uint32_t lo, hi;
  __asm__ volatile("xgetbv" : "=a"(lo), "=d"(hi) : "c"(0));
  const std::uint64_t xcr0 = (std::uint64_t(hi) << 32) | lo;
  return avx2 && fma && ((xcr0 & 0x6) == 0x6);
#else
  return false;
#endif
}

const Kernels* pick(const char* mode) {
  if (mode && std::strcmp(mode, "scalar") == 0) return &scalar_kernels();
#if defined(__x86_64__) || defined(_M_X64)
  if (mode && std::strcmp(mode, "avx2") == 0)
    return detect_avx2() ? &avx2_kernels() : nullptr;
  if (detect_avx2()) return &avx2_kernels();
#endif
  return &scalar_kernels();
}

}  // namespace

bool cpu_has_avx2() { return detect_avx2(); }

bool set_kernel_mode(const char* mode) {
  const Kernels* k = pick(mode);
  if (!k) return false;
  g_active.store(k, std::memory_order_release);
  return true;
}

const Kernels& active() {
  const Kernels* k = g_active.load(std::memory_order_acquire);
  if (!k) {
    const char* env = std::getenv("QSIM_SIMD");
    k = pick(env);
    if (!k) k = &scalar_kernels();
    g_active.store(k, std::memory_order_release);
  }
  return *k;
}

}  // namespace qsim::simd
