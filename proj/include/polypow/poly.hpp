#pragma once

#include <initializer_list>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "polypow/ff.hpp"

namespace polypow {

// Dense univariate polynomial over F_p; coefficient i multiplies x^i.
// The coefficient vector never has trailing zeros, so zero is empty.
// A default-constructed Poly is zero with no field attached; binary
// operations take the field from whichever operand has one.
class Poly {
 public:
  static constexpr int kMinusInfinity = std::numeric_limits<int>::min();

  Poly() = default;
  explicit Poly(const Field& f) : f_(&f) {}
  // Coefficients must already be canonical residues.
  Poly(const Field& f, std::vector<u64> coeffs) : f_(&f), c_(std::move(coeffs)) { normalize(); }

  static Poly from_ints(const Field& f, const std::vector<i64>& coeffs);
  static Poly from_ints(const Field& f, std::initializer_list<i64> coeffs) {
    return from_ints(f, std::vector<i64>(coeffs));
  }
  static Poly constant(const Field& f, u64 c) { return Poly(f, {f.reduce64(c)}); }
  static Poly monomial(const Field& f, u64 c, std::size_t k);
  static Poly x(const Field& f) { return monomial(f, 1, 1); }

  const Field& field() const;
  const Field* field_ptr() const { return f_; }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  std::size_t size() const { return c_.size(); }
  int degree() const { return c_.empty() ? kMinusInfinity : static_cast<int>(c_.size()) - 1; }
  u64 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  u64 lc() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<u64>& coeffs() const { return c_; }
  std::vector<u64> release() && { return std::move(c_); }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);

  Poly scaled(u64 c) const;
  Poly monic() const;
  Poly derivative() const;
  Poly truncated(std::size_t n) const;  // mod x^n
  Poly shifted(std::size_t k) const;    // times x^k
  u64 eval(u64 a) const;

  std::string to_string() const;  // coefficients, constant term first

 private:
  void normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const Field* f_ = nullptr;
  std::vector<u64> c_;
};

const Field& common_field(const Poly& a, const Poly& b);

// Multiplication. poly_mul picks a strategy; the others are exposed so tests
// can compare paths.
Poly poly_mul(const Poly& a, const Poly& b);
Poly mul_schoolbook(const Poly& a, const Poly& b);
Poly mul_karatsuba(const Poly& a, const Poly& b);
Poly mul_ntt(const Poly& a, const Poly& b);  // requires enough 2-adicity
Poly mul_crt(const Poly& a, const Poly& b);  // any prime
Poly mul_trunc(const Poly& a, const Poly& b, std::size_t n);

struct MulThresholds {
  std::size_t schoolbook = 32;  // min operand length
  std::size_t karatsuba = 160;  // min operand length below which Karatsuba is used
};
MulThresholds& mul_thresholds();

std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b);
Poly poly_div_exact(const Poly& a, const Poly& b);  // throws if b does not divide a
Poly poly_rem(const Poly& a, const Poly& b);
Poly poly_gcd(const Poly& a, const Poly& b);
// Returns (g, s, t) with s a + t b = g, g monic.
struct ExtGcd {
  Poly g, s, t;
};
ExtGcd poly_ext_gcd(const Poly& a, const Poly& b);
// Inverse of a modulo m; throws if not invertible.
Poly poly_inv_mod(const Poly& a, const Poly& m);
Poly poly_pow(const Poly& a, u64 e);

struct SquarefreeFactorization {
  u64 lc = 0;
  std::vector<std::pair<Poly, unsigned>> factors;  // monic, squarefree, pairwise coprime, nonconstant
  Poly star() const;   // product of factors
  Poly minus() const;  // product of factors^(m-1)
  Poly expand() const;
};
SquarefreeFactorization yun_squarefree(const Poly& q);

Poly taylor_shift(const Poly& a, u64 c);
u64 poly_eval(const Poly& a, u64 x);
Poly poly_interp(const Field& f, const std::vector<u64>& xs, const std::vector<u64>& ys);
// Several value vectors over the same abscissae.
std::vector<Poly> poly_interp_many(const Field& f, const std::vector<u64>& xs,
                                   const std::vector<std::vector<u64>>& ys);
Poly poly_reverse(const Poly& a, std::size_t r);
u64 poly_resultant(const Poly& a, const Poly& b);

// Parse "c0 c1 ..." (integers, possibly negative). Throws Error::Parse.
Poly parse_poly(const Field& f, const std::string& line);

}  // namespace polypow
