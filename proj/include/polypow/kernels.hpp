#pragma once

// Vector kernels over F_p. Every kernel has a portable scalar reference
// version; a SIMD variant is picked at runtime when the CPU and the prime
// allow it. All variants return canonical residues, so results are
// bit-identical across variants.

#include <cstddef>

#include "polypow/ff.hpp"

namespace polypow::simd {

struct Kernels {
  const char* name;
  // dst may alias a or b.
  void (*add)(const Field& f, u64* dst, const u64* a, const u64* b, std::size_t n);
  void (*sub)(const Field& f, u64* dst, const u64* a, const u64* b, std::size_t n);
  void (*mul)(const Field& f, u64* dst, const u64* a, const u64* b, std::size_t n);
  void (*scale)(const Field& f, u64* dst, const u64* a, u64 c, std::size_t n);
  // dst += c * a
  void (*axpy)(const Field& f, u64* dst, const u64* a, u64 c, std::size_t n);
  u64 (*dot)(const Field& f, const u64* a, const u64* b, std::size_t n);
  // One radix-2 stage over the whole array of length n with half-block h.
  // dif: (u, v) -> (u + v, (u - v) w[j]);  dit: (u, v) -> (u + w[j] v, u - w[j] v)
  void (*dif_stage)(const Field& f, u64* a, std::size_t n, std::size_t h, const u64* w);
  void (*dit_stage)(const Field& f, u64* a, std::size_t n, std::size_t h, const u64* w);
};

const Kernels& scalar_kernels();
// nullptr when not compiled in or not supported by this CPU.
const Kernels* avx2_kernels();
bool cpu_has_avx2();

enum class Mode { Auto, Scalar };
// Process-wide override, mainly for benchmarks and equivalence tests.
void set_mode(Mode m);
Mode mode();

// Kernel table to use for f under the current mode.
const Kernels& select(const Field& f);

}  // namespace polypow::simd
