#pragma once

#include <vector>

#include "polypow/poly.hpp"

namespace polypow {

// Element of F_p(x) in canonical form: gcd(num, den) = 1, den monic.
class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(const Field& f) : num_(f), den_(Poly::constant(f, 1)) {}
  RatFun(Poly p) : den_(Poly::constant(p.field(), 1)) { num_ = std::move(p); }  // NOLINT
  RatFun(Poly num, Poly den);  // normalizes; den must be nonzero

  static RatFun constant(const Field& f, u64 c) { return RatFun(Poly::constant(f, c)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const Field& field() const { return den_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_one(); }

  bool operator==(const RatFun& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  RatFun scaled(u64 c) const;
  RatFun inverse() const;
  RatFun derivative() const;
  // Value at a; throws DivisionByZero at a pole.
  u64 eval(u64 a) const;

  // Debug audit of the canonical form.
  bool is_canonical() const;

 private:
  struct Raw {};
  RatFun(Poly num, Poly den, Raw) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_;
  Poly den_;
};

enum class RatOp { Add, Sub, Mul, Div };
RatFun ratfun_arith(const RatFun& a, const RatFun& b, RatOp op);

// Cauchy interpolation: the unique num/den with deg num <= max_num,
// deg den <= max_den matching all samples. Throws NotFound otherwise.
RatFun ratfun_reconstruct(const Field& f, const std::vector<u64>& xs, const std::vector<u64>& ys,
                          int max_num_deg, int max_den_deg);

}  // namespace polypow
