#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

#include "polypow/error.hpp"

namespace polypow {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

namespace simd { struct Kernels; }
namespace detail { struct NttTables; }

bool is_prime_u64(u64 n);

// Prime field F_p for 2 < p < 2^62. Instances are interned: Field::of(p)
// always returns the same object, which lives for the whole process.
class Field {
 public:
  // 1048525 * 2^30 + 1, primitive root 3.
  static constexpr u64 kDefaultPrime = 1125845146009601ULL;

  static const Field& of(u64 p);
  static const Field& default_field() { return of(kDefaultPrime); }

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  u64 modulus() const { return p_; }
  unsigned two_adicity() const { return two_adicity_; }
  bool fits_double() const { return p_ < (u64{1} << 50); }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const { return reduce(static_cast<u128>(a) * b); }

  // x mod p for any x < p * 2^64.
  u64 reduce(u128 x) const {
    x <<= shift_;
    u64 u1 = static_cast<u64>(x >> 64);
    u64 u0 = static_cast<u64>(x);
    u128 q = static_cast<u128>(v_) * u1;
    q += x;
    u64 q1 = static_cast<u64>(q >> 64) + 1;
    u64 q0 = static_cast<u64>(q);
    u64 r = u0 - q1 * dnorm_;
    if (r > q0) r += dnorm_;
    if (r >= dnorm_) r -= dnorm_;
    return r >> shift_;
  }
  u64 reduce64(u64 x) const { return x >= p_ ? x % p_ : x; }

  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;  // throws DivisionByZero on 0
  u64 div(u64 a, u64 b) const { return mul(a, inv(b)); }
  u64 from_int(i64 v) const;
  // Centered lift in (-p/2, p/2].
  i64 to_signed(u64 a) const { return a > p_ / 2 ? -static_cast<i64>(p_ - a) : static_cast<i64>(a); }

  // Element of multiplicative order exactly 2^k (k <= two_adicity()).
  u64 root_of_unity(unsigned k) const;

  // Number of u128 products a*b (a,b < p) that can be summed without overflow.
  std::size_t lazy_terms() const { return lazy_terms_; }

  const simd::Kernels& kernels() const;
  const detail::NttTables& ntt_tables(unsigned log_n) const;

  // Batched inversion; zero entries stay zero.
  void batch_inv(u64* a, std::size_t n) const;

 private:
  explicit Field(u64 p);
  friend struct FieldRegistry;

  u64 p_;
  u64 dnorm_;
  u64 v_;
  unsigned shift_;
  unsigned two_adicity_;
  u64 two_adic_root_ = 0;
  std::size_t lazy_terms_;

  mutable std::mutex tables_mu_;
  mutable std::vector<std::unique_ptr<detail::NttTables>> tables_;
};

// Convenience value type bundling a residue with its field.
class FieldElement {
 public:
  FieldElement(const Field& f, u64 v) : f_(&f), v_(f.reduce64(v)) {}
  static FieldElement from_int(const Field& f, i64 v) { return {f, f.from_int(v)}; }

  u64 value() const { return v_; }
  const Field& field() const { return *f_; }

  FieldElement operator+(const FieldElement& o) const { return {*f_, f_->add(v_, o.v_)}; }
  FieldElement operator-(const FieldElement& o) const { return {*f_, f_->sub(v_, o.v_)}; }
  FieldElement operator*(const FieldElement& o) const { return {*f_, f_->mul(v_, o.v_)}; }
  FieldElement operator/(const FieldElement& o) const { return {*f_, f_->div(v_, o.v_)}; }
  FieldElement operator-() const { return {*f_, f_->neg(v_)}; }
  bool operator==(const FieldElement& o) const { return f_ == o.f_ && v_ == o.v_; }

 private:
  const Field* f_;
  u64 v_;
};

enum class FieldOp { Add, Sub, Mul, Div };
FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op);
FieldElement field_pow(const FieldElement& a, u64 e);

class FactorialTable {
 public:
  FactorialTable(const Field& f, u64 limit);
  u64 limit() const { return fact_.size() - 1; }
  u64 fact(u64 k) const { return fact_[k]; }
  u64 inv_fact(u64 k) const { return inv_fact_[k]; }
  u64 inv(u64 k) const;  // 1/k for 1 <= k <= limit
  u64 binom(u64 k, u64 i) const;

 private:
  const Field* f_;
  std::vector<u64> fact_;
  std::vector<u64> inv_fact_;
};

// SplitMix64; fixed algorithm so seeded instances reproduce everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(u64 seed) : s_(seed) {}
  u64 next() {
    u64 z = (s_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound) by rejection.
  u64 below(u64 bound) {
    u64 limit = ~u64{0} - (~u64{0} % bound);
    for (;;) {
      u64 v = next();
      if (v < limit) return v % bound;
    }
  }

 private:
  u64 s_;
};

// 64-bit FNV-1a over a stream of words, fed little-endian byte by byte.
class Fnv1a {
 public:
  void add(u64 w) {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (w >> (8 * i)) & 0xff;
      h_ *= 0x100000001b3ULL;
    }
  }
  u64 value() const { return h_; }

 private:
  u64 h_ = 0xcbf29ce484222325ULL;
};

}  // namespace polypow
