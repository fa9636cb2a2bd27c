#include "polypow/ratfun.hpp"

namespace polypow {

RatFun::RatFun(Poly num, Poly den) {
  if (den.is_zero()) throw Error(Error::Kind::DivisionByZero, "ratfun", "zero denominator");
  const Field& f = den.field();
  if (num.is_zero()) {
    num_ = Poly(f);
    den_ = Poly::constant(f, 1);
    return;
  }
  if (den.degree() > 0) {
    Poly g = poly_gcd(num, den);
    if (g.degree() > 0) {
      num = poly_div_exact(num, g);
      den = poly_div_exact(den, g);
    }
  }
  u64 li = f.inv(den.lc());
  num_ = num.scaled(li);
  den_ = li == 1 ? std::move(den) : den.scaled(li);
}

RatFun RatFun::operator-() const { return RatFun(-num_, den_, Raw{}); }

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_poly() && b.is_poly()) return RatFun(a.num_ + b.num_, a.den_, RatFun::Raw{});
  if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
  if (a.is_poly()) return RatFun(a.num_ * b.den_ + b.num_, b.den_, RatFun::Raw{});
  if (b.is_poly()) return RatFun(a.num_ + b.num_ * a.den_, a.den_, RatFun::Raw{});
  Poly g = poly_gcd(a.den_, b.den_);
  if (g.is_one()) return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_, RatFun::Raw{});
  Poly bd = poly_div_exact(b.den_, g);
  Poly ad = poly_div_exact(a.den_, g);
  Poly num = a.num_ * bd + b.num_ * ad;
  Poly den = a.den_ * bd;
  if (num.is_zero()) return RatFun(a.field());
  // gcd(num, den) divides g
  Poly h = poly_gcd(num, g);
  if (h.degree() > 0) {
    num = poly_div_exact(num, h);
    den = poly_div_exact(den, h);
  }
  return RatFun(std::move(num), std::move(den), RatFun::Raw{});
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (a.is_poly() && b.is_poly()) return RatFun(a.num_ * b.num_, a.den_, RatFun::Raw{});
  Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (bd.degree() > 0 && an.degree() > 0) {
    Poly g = poly_gcd(an, bd);
    if (g.degree() > 0) {
      an = poly_div_exact(an, g);
      bd = poly_div_exact(bd, g);
    }
  }
  if (ad.degree() > 0 && bn.degree() > 0) {
    Poly g = poly_gcd(bn, ad);
    if (g.degree() > 0) {
      bn = poly_div_exact(bn, g);
      ad = poly_div_exact(ad, g);
    }
  }
  // Denominators stay monic: products and exact quotients of monic polys.
  return RatFun(an * bn, ad * bd, RatFun::Raw{});
}

RatFun operator/(const RatFun& a, const RatFun& b) { return a * b.inverse(); }

RatFun RatFun::scaled(u64 c) const {
  if (field().reduce64(c) == 0) return RatFun(field());
  return RatFun(num_.scaled(c), den_, Raw{});
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw Error(Error::Kind::DivisionByZero, "ratfun", "inverse of zero");
  u64 li = field().inv(num_.lc());
  return RatFun(den_.scaled(li), num_.scaled(li), Raw{});
}

RatFun RatFun::derivative() const {
  if (is_poly()) return RatFun(num_.derivative(), den_, Raw{});
  return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

u64 RatFun::eval(u64 a) const {
  u64 d = den_.eval(a);
  if (d == 0) throw Error(Error::Kind::DivisionByZero, "ratfun", "evaluation at a pole");
  return field().div(poly_eval(num_, a), d);
}

bool RatFun::is_canonical() const {
  if (den_.is_zero() || den_.lc() != 1) return false;
  if (num_.is_zero()) return den_.is_one();
  return poly_gcd(num_, den_).is_one();
}

RatFun ratfun_arith(const RatFun& a, const RatFun& b, RatOp op) {
  switch (op) {
    case RatOp::Add: return a + b;
    case RatOp::Sub: return a - b;
    case RatOp::Mul: return a * b;
    case RatOp::Div: return a / b;
  }
  throw Error(Error::Kind::Internal, "ratfun", "unknown op");
}

RatFun ratfun_reconstruct(const Field& f, const std::vector<u64>& xs, const std::vector<u64>& ys,
                          int max_num_deg, int max_den_deg) {
  const std::size_t n = xs.size();
  if (max_num_deg < 0 || max_den_deg < 0 || n < static_cast<std::size_t>(max_num_deg + max_den_deg + 1)) {
    throw Error(Error::Kind::Precondition, "ratfun_reconstruct", "not enough sample points for degree bounds");
  }
  Poly interp = poly_interp(f, xs, ys);
  Poly modulus = Poly::constant(f, 1);
  for (u64 x : xs) modulus = modulus * Poly(f, {f.neg(x), 1});
  // Extended Euclid on (modulus, interp), tracking only the cofactor of interp.
  Poly r0 = modulus, r1 = interp;
  Poly t0(f), t1 = Poly::constant(f, 1);
  while (!r1.is_zero() && r1.degree() > max_num_deg) {
    auto [q, r] = poly_divrem(r0, r1);
    Poly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  auto fail = [] {
    return Error(Error::Kind::NotFound, "ratfun_reconstruct", "degree bounds exceeded");
  };
  if (r1.is_zero()) {
    // interp itself may be 0
    if (interp.is_zero()) return RatFun(f);
    throw fail();
  }
  if (t1.is_zero() || t1.degree() > max_den_deg) throw fail();
  for (u64 x : xs) {
    if (t1.eval(x) == 0) throw fail();
  }
  RatFun out(r1, t1);
  for (std::size_t i = 0; i < n; ++i) {
    if (out.eval(xs[i]) != ys[i]) throw fail();
  }
  return out;
}

}  // namespace polypow
