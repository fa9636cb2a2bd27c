#pragma once

#include <vector>

#include "polypow/poly.hpp"
#include "polypow/ratfun.hpp"

namespace polypow {

// Polynomial in y with coefficients in F_p[x]; index = power of y.
class BiPoly {
 public:
  BiPoly() = default;
  explicit BiPoly(const Field& f) : f_(&f) {}
  BiPoly(const Field& f, std::vector<Poly> ycoeffs);

  static BiPoly from_poly(const Poly& p) { return BiPoly(p.field(), {p}); }
  static BiPoly y_power(const Field& f, std::size_t k);
  static BiPoly constant(const Field& f, u64 c) { return from_poly(Poly::constant(f, c)); }

  const Field& field() const;
  const Field* field_ptr() const { return f_; }
  bool is_zero() const { return c_.empty(); }
  int degree_y() const { return c_.empty() ? Poly::kMinusInfinity : static_cast<int>(c_.size()) - 1; }
  int degree_x() const;
  std::size_t size() const { return c_.size(); }
  const Poly& operator[](std::size_t i) const;
  const std::vector<Poly>& coeffs() const { return c_; }
  const Poly& lc() const { return c_.back(); }
  bool is_monic_y() const { return !c_.empty() && c_.back().is_one(); }

  bool operator==(const BiPoly& o) const { return c_ == o.c_; }
  bool operator!=(const BiPoly& o) const { return !(*this == o); }

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
  BiPoly times(const Poly& c) const;
  BiPoly shifted_y(std::size_t k) const;

  BiPoly dx() const;
  BiPoly dy() const;
  Poly eval_x(u64 a) const;  // polynomial in y
  Poly eval_y0() const { return c_.empty() ? Poly(*f_) : c_[0]; }
  BiPoly reverse_y(std::size_t r) const;  // y^r * B(x, 1/y)
  BiPoly truncated_y(std::size_t n) const;
  Poly content() const;  // monic gcd of all coefficients

 private:
  void normalize();
  const Field* f_ = nullptr;
  std::vector<Poly> c_;
};

// a = q b + r with deg_y r < deg_y b; b must be monic in y.
std::pair<BiPoly, BiPoly> ypoly_divrem(const BiPoly& a, const BiPoly& b);
BiPoly ypoly_rem(const BiPoly& a, const BiPoly& b);

// Polynomial in y over L = F_p(x).
class YPolyL {
 public:
  YPolyL() = default;
  explicit YPolyL(const Field& f) : f_(&f) {}
  YPolyL(const Field& f, std::vector<RatFun> ycoeffs);
  explicit YPolyL(const BiPoly& b);

  static YPolyL constant(const RatFun& c);
  static YPolyL y_power(const Field& f, std::size_t k);

  const Field& field() const;
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? Poly::kMinusInfinity : static_cast<int>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const RatFun& operator[](std::size_t i) const { return c_[i]; }
  RatFun coeff(std::size_t i) const { return i < c_.size() ? c_[i] : RatFun(*f_); }
  const std::vector<RatFun>& coeffs() const { return c_; }
  const RatFun& lc() const { return c_.back(); }

  bool operator==(const YPolyL& o) const { return c_ == o.c_; }
  bool operator!=(const YPolyL& o) const { return !(*this == o); }

  YPolyL operator-() const;
  YPolyL& operator+=(const YPolyL& o);
  YPolyL& operator-=(const YPolyL& o);
  friend YPolyL operator+(YPolyL a, const YPolyL& b) { return a += b; }
  friend YPolyL operator-(YPolyL a, const YPolyL& b) { return a -= b; }
  friend YPolyL operator*(const YPolyL& a, const YPolyL& b);
  YPolyL times(const RatFun& c) const;
  YPolyL shifted(std::size_t k) const;  // times y^k

  YPolyL dy() const;
  YPolyL dx() const;
  YPolyL monic() const;

  // Common denominator: returns (B, m) with this = B / m, m monic.
  std::pair<BiPoly, Poly> clear_denominators() const;

 private:
  void normalize();
  const Field* f_ = nullptr;
  std::vector<RatFun> c_;
};

std::pair<YPolyL, YPolyL> ypoly_divrem(const YPolyL& a, const YPolyL& b);
YPolyL ypoly_rem(const YPolyL& a, const YPolyL& b);
YPolyL ypoly_div_exact(const YPolyL& a, const YPolyL& b);
YPolyL ypoly_gcd(const YPolyL& a, const YPolyL& b);  // monic
// Inverse of a modulo m over L; throws if not coprime.
YPolyL ypoly_inv_mod(const YPolyL& a, const YPolyL& m);

struct YSquarefree {
  RatFun lc;
  std::vector<std::pair<YPolyL, unsigned>> factors;  // monic, squarefree, pairwise coprime
  YPolyL star() const;
  YPolyL minus() const;
};
YSquarefree y_yun(const YPolyL& q);
// Q = lc * Q* * Q-, Q* monic squarefree.
std::pair<YPolyL, YPolyL> y_squarefree_part(const YPolyL& q);

// Rational function num / den in (x, y), content over F_p[x] removed.
struct BiRat {
  BiPoly num;
  BiPoly den;
  BiRat() = default;
  BiRat(BiPoly n, BiPoly d);
  const Field& field() const { return den.field(); }
  Poly den_at_y0() const { return den.eval_y0(); }
};
BiRat birat_dx(const BiRat& h);

// Res_y(P, t - Q) as a polynomial in t (stored in the y slot).
BiPoly resultant_y(const BiPoly& P, const BiPoly& Q);

}  // namespace polypow
