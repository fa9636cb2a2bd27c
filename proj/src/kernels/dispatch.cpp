#include <atomic>

#include "polypow/kernels.hpp"

namespace polypow::simd {

#ifdef POLYPOW_WITH_AVX2
const Kernels* avx2_kernels_impl();
#endif

namespace {
std::atomic<Mode> g_mode{Mode::Auto};
}

bool cpu_has_avx2() {
#if defined(POLYPOW_WITH_AVX2) && (defined(__x86_64__) || defined(__i386__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const Kernels* avx2_kernels() {
#ifdef POLYPOW_WITH_AVX2
  if (cpu_has_avx2()) return avx2_kernels_impl();
#endif
  return nullptr;
}

void set_mode(Mode m) { g_mode.store(m, std::memory_order_relaxed); }
Mode mode() { return g_mode.load(std::memory_order_relaxed); }

const Kernels& select(const Field& f) {
  if (mode() == Mode::Auto && f.fits_double()) {
    if (const Kernels* k = avx2_kernels()) return *k;
  }
  return scalar_kernels();
}

}  // namespace polypow::simd
