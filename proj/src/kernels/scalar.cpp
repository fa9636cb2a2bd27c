#include "polypow/kernels.hpp"

namespace polypow::simd {

namespace {

void add_s(const Field& f, u64* dst, const u64* a, const u64* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = f.add(a[i], b[i]);
}

void sub_s(const Field& f, u64* dst, const u64* a, const u64* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = f.sub(a[i], b[i]);
}

void mul_s(const Field& f, u64* dst, const u64* a, const u64* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = f.mul(a[i], b[i]);
}

void scale_s(const Field& f, u64* dst, const u64* a, u64 c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = f.mul(a[i], c);
}

void axpy_s(const Field& f, u64* dst, const u64* a, u64 c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = f.add(dst[i], f.mul(a[i], c));
}

u64 dot_s(const Field& f, const u64* a, const u64* b, std::size_t n) {
  const std::size_t chunk = f.lazy_terms();
  u64 acc = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t end = n - i > chunk ? i + chunk : n;
    u128 s = 0;
    for (; i < end; ++i) s += static_cast<u128>(a[i]) * b[i];
    // s < 2^128 but reduce() needs s < p * 2^64; split into halves.
    u64 hi = f.reduce(static_cast<u64>(s >> 64));
    u64 lo = static_cast<u64>(s);
    acc = f.add(acc, f.reduce((static_cast<u128>(hi) << 64) | lo));
  }
  return acc;
}

void dif_s(const Field& f, u64* a, std::size_t n, std::size_t h, const u64* w) {
  for (std::size_t s = 0; s < n; s += 2 * h) {
    u64* x = a + s;
    u64* y = x + h;
    for (std::size_t j = 0; j < h; ++j) {
      u64 u = x[j], v = y[j];
      x[j] = f.add(u, v);
      y[j] = f.mul(f.sub(u, v), w[j]);
    }
  }
}

void dit_s(const Field& f, u64* a, std::size_t n, std::size_t h, const u64* w) {
  for (std::size_t s = 0; s < n; s += 2 * h) {
    u64* x = a + s;
    u64* y = x + h;
    for (std::size_t j = 0; j < h; ++j) {
      u64 u = x[j], t = f.mul(y[j], w[j]);
      x[j] = f.add(u, t);
      y[j] = f.sub(u, t);
    }
  }
}

const Kernels kScalar = {"scalar", add_s, sub_s, mul_s, scale_s, axpy_s, dot_s, dif_s, dit_s};

}  // namespace

const Kernels& scalar_kernels() { return kScalar; }

}  // namespace polypow::simd
