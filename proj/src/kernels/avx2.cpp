// AVX2 + FMA kernels for primes below 2^50. Products are split exactly
// into a double-double pair (h, l) with one FMA; the quotient estimate
// floor(h / p) is off by at most one, fixed by two conditional corrections.

#include <immintrin.h>

#include "polypow/kernels.hpp"

namespace polypow::simd {

namespace {

struct Consts {
  __m256d p;
  __m256d pinv;
  __m256i pi;
  __m256i pm1;
  explicit Consts(const Field& f) {
    double pd = static_cast<double>(f.modulus());
    p = _mm256_set1_pd(pd);
    pinv = _mm256_set1_pd(1.0 / pd);
    pi = _mm256_set1_epi64x(static_cast<long long>(f.modulus()));
    pm1 = _mm256_set1_epi64x(static_cast<long long>(f.modulus() - 1));
  }
};

// Not namespace-scope constants: static initializers would execute AVX
// instructions even on CPUs that never select these kernels.
inline __m256d magic() { return _mm256_set1_pd(4503599627370496.0); }  // 2^52
inline __m256i magic_bits() { return _mm256_set1_epi64x(0x4330000000000000LL); }

inline __m256d to_pd(__m256i x) {
  return _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(x, magic_bits())), magic());
}

inline __m256i to_epi(__m256d x) {
  return _mm256_xor_si256(_mm256_castpd_si256(_mm256_add_pd(x, magic())), magic_bits());
}

inline __m256d mulmod(__m256d a, __m256d b, const Consts& c) {
  __m256d h = _mm256_mul_pd(a, b);
  __m256d l = _mm256_fmsub_pd(a, b, h);
  __m256d q = _mm256_round_pd(_mm256_mul_pd(h, c.pinv), _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_add_pd(_mm256_fnmadd_pd(q, c.p, h), l);
  __m256d neg = _mm256_cmp_pd(r, _mm256_setzero_pd(), _CMP_LT_OQ);
  r = _mm256_add_pd(r, _mm256_and_pd(neg, c.p));
  __m256d big = _mm256_cmp_pd(r, c.p, _CMP_GE_OQ);
  return _mm256_sub_pd(r, _mm256_and_pd(big, c.p));
}

inline __m256d addmod_pd(__m256d a, __m256d b, const Consts& c) {
  __m256d s = _mm256_add_pd(a, b);
  __m256d big = _mm256_cmp_pd(s, c.p, _CMP_GE_OQ);
  return _mm256_sub_pd(s, _mm256_and_pd(big, c.p));
}

inline __m256i addmod_epi(__m256i a, __m256i b, const Consts& c) {
  __m256i s = _mm256_add_epi64(a, b);
  __m256i big = _mm256_cmpgt_epi64(s, c.pm1);
  return _mm256_sub_epi64(s, _mm256_and_si256(big, c.pi));
}

inline __m256i submod_epi(__m256i a, __m256i b, const Consts& c) {
  __m256i t = _mm256_sub_epi64(a, b);
  __m256i neg = _mm256_cmpgt_epi64(_mm256_setzero_si256(), t);
  return _mm256_add_epi64(t, _mm256_and_si256(neg, c.pi));
}

inline __m256i load(const u64* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(u64* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void add_v(const Field& f, u64* dst, const u64* a, const u64* b, std::size_t n) {
  Consts c(f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, addmod_epi(load(a + i), load(b + i), c));
  for (; i < n; ++i) dst[i] = f.add(a[i], b[i]);
}

void sub_v(const Field& f, u64* dst, const u64* a, const u64* b, std::size_t n) {
  Consts c(f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, submod_epi(load(a + i), load(b + i), c));
  for (; i < n; ++i) dst[i] = f.sub(a[i], b[i]);
}

void mul_v(const Field& f, u64* dst, const u64* a, const u64* b, std::size_t n) {
  Consts c(f);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, to_epi(mulmod(to_pd(load(a + i)), to_pd(load(b + i)), c)));
  for (; i < n; ++i) dst[i] = f.mul(a[i], b[i]);
}

void scale_v(const Field& f, u64* dst, const u64* a, u64 s, std::size_t n) {
  Consts c(f);
  __m256d sv = _mm256_set1_pd(static_cast<double>(s));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) store(dst + i, to_epi(mulmod(to_pd(load(a + i)), sv, c)));
  for (; i < n; ++i) dst[i] = f.mul(a[i], s);
}

void axpy_v(const Field& f, u64* dst, const u64* a, u64 s, std::size_t n) {
  Consts c(f);
  __m256d sv = _mm256_set1_pd(static_cast<double>(s));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d t = mulmod(to_pd(load(a + i)), sv, c);
    store(dst + i, to_epi(addmod_pd(to_pd(load(dst + i)), t, c)));
  }
  for (; i < n; ++i) dst[i] = f.add(dst[i], f.mul(a[i], s));
}

u64 dot_v(const Field& f, const u64* a, const u64* b, std::size_t n) {
  Consts c(f);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = addmod_pd(acc0, mulmod(to_pd(load(a + i)), to_pd(load(b + i)), c), c);
    acc1 = addmod_pd(acc1, mulmod(to_pd(load(a + i + 4)), to_pd(load(b + i + 4)), c), c);
  }
  acc0 = addmod_pd(acc0, acc1, c);
  alignas(32) u64 lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), to_epi(acc0));
  u64 r = f.add(f.add(lanes[0], lanes[1]), f.add(lanes[2], lanes[3]));
  for (; i < n; ++i) r = f.add(r, f.mul(a[i], b[i]));
  return r;
}

void dif_v(const Field& f, u64* a, std::size_t n, std::size_t h, const u64* w) {
  if (h < 4) {
    scalar_kernels().dif_stage(f, a, n, h, w);
    return;
  }
  Consts c(f);
  for (std::size_t s = 0; s < n; s += 2 * h) {
    u64* x = a + s;
    u64* y = x + h;
    for (std::size_t j = 0; j < h; j += 4) {
      __m256i u = load(x + j), v = load(y + j);
      store(x + j, addmod_epi(u, v, c));
      __m256d d = to_pd(submod_epi(u, v, c));
      store(y + j, to_epi(mulmod(d, to_pd(load(w + j)), c)));
    }
  }
}

void dit_v(const Field& f, u64* a, std::size_t n, std::size_t h, const u64* w) {
  if (h < 4) {
    scalar_kernels().dit_stage(f, a, n, h, w);
    return;
  }
  Consts c(f);
  for (std::size_t s = 0; s < n; s += 2 * h) {
    u64* x = a + s;
    u64* y = x + h;
    for (std::size_t j = 0; j < h; j += 4) {
      __m256i u = load(x + j);
      __m256i t = to_epi(mulmod(to_pd(load(y + j)), to_pd(load(w + j)), c));
      store(x + j, addmod_epi(u, t, c));
      store(y + j, submod_epi(u, t, c));
    }
  }
}

const Kernels kAvx2 = {"avx2", add_v, sub_v, mul_v, scale_v, axpy_v, dot_v, dif_v, dit_v};

}  // namespace

const Kernels* avx2_kernels_impl() { return &kAvx2; }

}  // namespace polypow::simd
