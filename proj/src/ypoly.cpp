#include "polypow/ypoly.hpp"

#include <algorithm>

#include "polypow/matrix.hpp"

namespace polypow {

// ---- BiPoly ----

BiPoly::BiPoly(const Field& f, std::vector<Poly> ycoeffs) : f_(&f), c_(std::move(ycoeffs)) {
  for (auto& p : c_) {
    if (p.is_zero() && !p.field_ptr()) p = Poly(f);
  }
  normalize();
}

void BiPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BiPoly BiPoly::y_power(const Field& f, std::size_t k) {
  std::vector<Poly> c(k + 1, Poly(f));
  c[k] = Poly::constant(f, 1);
  return BiPoly(f, std::move(c));
}

const Field& BiPoly::field() const {
  if (!f_) throw Error(Error::Kind::Internal, "bipoly", "no field attached");
  return *f_;
}

int BiPoly::degree_x() const {
  int d = Poly::kMinusInfinity;
  for (const auto& p : c_) d = std::max(d, p.degree());
  return d;
}

const Poly& BiPoly::operator[](std::size_t i) const {
  static const Poly zero;
  return i < c_.size() ? c_[i] : zero;
}

BiPoly BiPoly::operator-() const {
  BiPoly r(*this);
  for (auto& p : r.c_) p = -p;
  return r;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  if (!f_) f_ = o.f_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Poly(*f_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
  if (!f_) f_ = o.f_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Poly(*f_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
  const Field& f = a.f_ ? *a.f_ : b.field();
  if (a.is_zero() || b.is_zero()) return BiPoly(f);
  std::vector<Poly> c(a.size() + b.size() - 1, Poly(f));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return BiPoly(f, std::move(c));
}

BiPoly BiPoly::times(const Poly& c) const {
  std::vector<Poly> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * c;
  return BiPoly(field(), std::move(r));
}

BiPoly BiPoly::shifted_y(std::size_t k) const {
  if (is_zero()) return *this;
  std::vector<Poly> r(k, Poly(*f_));
  r.insert(r.end(), c_.begin(), c_.end());
  return BiPoly(*f_, std::move(r));
}

BiPoly BiPoly::dx() const {
  std::vector<Poly> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].derivative();
  return BiPoly(field(), std::move(r));
}

BiPoly BiPoly::dy() const {
  if (c_.size() <= 1) return BiPoly(field());
  std::vector<Poly> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i].scaled(f_->reduce64(i));
  return BiPoly(*f_, std::move(r));
}

Poly BiPoly::eval_x(u64 a) const {
  std::vector<u64> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = poly_eval(c_[i], a);
  return Poly(field(), std::move(r));
}

BiPoly BiPoly::reverse_y(std::size_t r) const {
  if (is_zero()) return *this;
  if (static_cast<std::size_t>(degree_y()) > r) {
    throw Error(Error::Kind::Precondition, "bipoly", "reversal degree below y-degree");
  }
  std::vector<Poly> c(r + 1, Poly(*f_));
  for (std::size_t i = 0; i < c_.size(); ++i) c[r - i] = c_[i];
  return BiPoly(*f_, std::move(c));
}

BiPoly BiPoly::truncated_y(std::size_t n) const {
  if (c_.size() <= n) return *this;
  return BiPoly(*f_, std::vector<Poly>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Poly BiPoly::content() const {
  Poly g;
  bool first = true;
  for (const auto& p : c_) {
    if (p.is_zero()) continue;
    g = first ? p.monic() : poly_gcd(g, p);
    first = false;
    if (g.is_one()) break;
  }
  return first ? Poly(field()) : g;
}

std::pair<BiPoly, BiPoly> ypoly_divrem(const BiPoly& a, const BiPoly& b) {
  if (!b.is_monic_y()) {
    throw Error(Error::Kind::Precondition, "ypoly_divrem", "divisor must be monic in y");
  }
  const Field& f = b.field();
  if (a.degree_y() < b.degree_y()) return {BiPoly(f), a};
  std::vector<Poly> r = a.coeffs();
  const std::size_t nb = b.size();
  std::vector<Poly> q(a.size() - nb + 1, Poly(f));
  for (std::size_t i = q.size(); i-- > 0;) {
    Poly c = r[i + nb - 1];
    if (c.is_zero()) continue;
    q[i] = c;
    for (std::size_t j = 0; j + 1 < nb; ++j) {
      if (!b[j].is_zero()) r[i + j] -= c * b[j];
    }
    r[i + nb - 1] = Poly(f);
  }
  r.resize(nb - 1);
  return {BiPoly(f, std::move(q)), BiPoly(f, std::move(r))};
}

BiPoly ypoly_rem(const BiPoly& a, const BiPoly& b) {
  if (a.degree_y() < b.degree_y() && b.is_monic_y()) return a;
  return ypoly_divrem(a, b).second;
}

// ---- YPolyL ----

YPolyL::YPolyL(const Field& f, std::vector<RatFun> ycoeffs) : f_(&f), c_(std::move(ycoeffs)) { normalize(); }

YPolyL::YPolyL(const BiPoly& b) : f_(&b.field()) {
  c_.reserve(b.size());
  for (const auto& p : b.coeffs()) c_.push_back(p.is_zero() ? RatFun(*f_) : RatFun(p));
  normalize();
}

YPolyL YPolyL::constant(const RatFun& c) { return YPolyL(c.field(), {c}); }

YPolyL YPolyL::y_power(const Field& f, std::size_t k) {
  std::vector<RatFun> c(k + 1, RatFun(f));
  c[k] = RatFun::constant(f, 1);
  return YPolyL(f, std::move(c));
}

const Field& YPolyL::field() const {
  if (!f_) throw Error(Error::Kind::Internal, "ypolyl", "no field attached");
  return *f_;
}

void YPolyL::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

YPolyL YPolyL::operator-() const {
  YPolyL r(*this);
  for (auto& c : r.c_) c = -c;
  return r;
}

YPolyL& YPolyL::operator+=(const YPolyL& o) {
  if (!f_) f_ = o.f_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), RatFun(*f_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

YPolyL& YPolyL::operator-=(const YPolyL& o) {
  if (!f_) f_ = o.f_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), RatFun(*f_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

YPolyL operator*(const YPolyL& a, const YPolyL& b) {
  const Field& f = a.f_ ? *a.f_ : b.field();
  if (a.is_zero() || b.is_zero()) return YPolyL(f);
  std::vector<RatFun> c(a.size() + b.size() - 1, RatFun(f));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!b.c_[j].is_zero()) c[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return YPolyL(f, std::move(c));
}

YPolyL YPolyL::times(const RatFun& c) const {
  if (c.is_zero()) return YPolyL(field());
  std::vector<RatFun> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * c;
  return YPolyL(field(), std::move(r));
}

YPolyL YPolyL::shifted(std::size_t k) const {
  if (is_zero()) return *this;
  std::vector<RatFun> r(k, RatFun(*f_));
  r.insert(r.end(), c_.begin(), c_.end());
  return YPolyL(*f_, std::move(r));
}

YPolyL YPolyL::dy() const {
  if (c_.size() <= 1) return YPolyL(field());
  std::vector<RatFun> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i].scaled(f_->reduce64(i));
  return YPolyL(*f_, std::move(r));
}

YPolyL YPolyL::dx() const {
  std::vector<RatFun> r(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].derivative();
  return YPolyL(field(), std::move(r));
}

YPolyL YPolyL::monic() const {
  if (is_zero() || lc() == RatFun::constant(*f_, 1)) return *this;
  return times(lc().inverse());
}

std::pair<BiPoly, Poly> YPolyL::clear_denominators() const {
  const Field& f = field();
  Poly m = Poly::constant(f, 1);
  for (const auto& c : c_) {
    if (c.den().degree() > 0) {
      Poly g = poly_gcd(m, c.den());
      m = m * poly_div_exact(c.den(), g);
    }
  }
  std::vector<Poly> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    out[i] = c_[i].is_zero() ? Poly(f) : c_[i].num() * poly_div_exact(m, c_[i].den());
  }
  return {BiPoly(f, std::move(out)), m};
}

std::pair<YPolyL, YPolyL> ypoly_divrem(const YPolyL& a, const YPolyL& b) {
  if (b.is_zero()) throw Error(Error::Kind::DivisionByZero, "ypoly_divrem", "division by zero");
  const Field& f = b.field();
  if (a.degree() < b.degree()) return {YPolyL(f), a};
  std::vector<RatFun> r = a.coeffs();
  const std::size_t nb = b.size();
  std::vector<RatFun> q(a.size() - nb + 1, RatFun(f));
  RatFun inv = b.lc().inverse();
  bool unit = b.lc() == RatFun::constant(f, 1);
  for (std::size_t i = q.size(); i-- > 0;) {
    if (r[i + nb - 1].is_zero()) continue;
    RatFun c = unit ? r[i + nb - 1] : r[i + nb - 1] * inv;
    q[i] = c;
    for (std::size_t j = 0; j + 1 < nb; ++j) {
      if (!b[j].is_zero()) r[i + j] -= c * b[j];
    }
    r[i + nb - 1] = RatFun(f);
  }
  r.resize(nb - 1);
  return {YPolyL(f, std::move(q)), YPolyL(f, std::move(r))};
}

YPolyL ypoly_rem(const YPolyL& a, const YPolyL& b) {
  if (a.degree() < b.degree() && !b.is_zero()) return a;
  return ypoly_divrem(a, b).second;
}

YPolyL ypoly_div_exact(const YPolyL& a, const YPolyL& b) {
  auto [q, r] = ypoly_divrem(a, b);
  if (!r.is_zero()) throw Error(Error::Kind::Internal, "ypoly_div_exact", "division is not exact");
  return q;
}

YPolyL ypoly_gcd(const YPolyL& a, const YPolyL& b) {
  if (a.is_zero() && b.is_zero()) throw Error(Error::Kind::Precondition, "ypoly_gcd", "both operands zero");
  YPolyL x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    YPolyL r = ypoly_rem(x, y).monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

YPolyL ypoly_inv_mod(const YPolyL& a, const YPolyL& m) {
  const Field& f = m.field();
  YPolyL r0 = m, r1 = ypoly_rem(a, m);
  YPolyL t0(f), t1 = YPolyL::constant(RatFun::constant(f, 1));
  while (!r1.is_zero()) {
    auto [q, r] = ypoly_divrem(r0, r1);
    YPolyL t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.degree() != 0) throw Error(Error::Kind::DivisionByZero, "ypoly_inv_mod", "not invertible");
  return ypoly_rem(t0.times(r0.lc().inverse()), m);
}

YPolyL YSquarefree::star() const {
  YPolyL r;
  bool first = true;
  for (const auto& [q, m] : factors) {
    r = first ? q : r * q;
    first = false;
  }
  return first ? YPolyL::constant(RatFun::constant(lc.field(), 1)) : r;
}

YPolyL YSquarefree::minus() const {
  YPolyL r = YPolyL::constant(RatFun::constant(lc.field(), 1));
  for (const auto& [q, m] : factors) {
    for (unsigned k = 1; k < m; ++k) r = r * q;
  }
  return r;
}

YSquarefree y_yun(const YPolyL& q) {
  if (q.is_zero()) throw Error(Error::Kind::Precondition, "y_squarefree", "zero polynomial");
  YSquarefree out;
  out.lc = q.lc();
  YPolyL g = q.monic();
  if (g.degree() == 0) return out;
  YPolyL gp = g.dy();
  YPolyL a0 = ypoly_gcd(g, gp);
  YPolyL b = ypoly_div_exact(g, a0);
  YPolyL c = ypoly_div_exact(gp, a0);
  YPolyL d = c - b.dy();
  unsigned i = 1;
  while (b.degree() > 0) {
    YPolyL a = d.is_zero() ? b.monic() : ypoly_gcd(b, d);
    if (a.degree() > 0) out.factors.emplace_back(a, i);
    b = ypoly_div_exact(b, a);
    c = ypoly_div_exact(d, a);
    d = c - b.dy();
    ++i;
  }
  return out;
}

std::pair<YPolyL, YPolyL> y_squarefree_part(const YPolyL& q) {
  YSquarefree s = y_yun(q);
  return {s.star(), s.minus()};
}

// ---- BiRat ----

BiRat::BiRat(BiPoly n, BiPoly d) : num(std::move(n)), den(std::move(d)) {
  if (den.is_zero()) throw Error(Error::Kind::DivisionByZero, "birat", "zero denominator");
  const Field& f = den.field();
  if (num.is_zero()) {
    num = BiPoly(f);
    return;
  }
  Poly g = poly_gcd(num.content(), den.content());
  if (g.degree() > 0) {
    std::vector<Poly> nc, dc;
    for (const auto& p : num.coeffs()) nc.push_back(p.is_zero() ? p : poly_div_exact(p, g));
    for (const auto& p : den.coeffs()) dc.push_back(p.is_zero() ? p : poly_div_exact(p, g));
    num = BiPoly(f, std::move(nc));
    den = BiPoly(f, std::move(dc));
  }
}

BiRat birat_dx(const BiRat& h) {
  if (h.num.is_zero()) return h;
  BiPoly n = h.num.dx() * h.den - h.num * h.den.dx();
  return BiRat(std::move(n), h.den * h.den);
}

// ---- resultant ----

BiPoly resultant_y(const BiPoly& P, const BiPoly& Q) {
  if (!P.is_monic_y() || P.degree_y() < 1) {
    throw Error(Error::Kind::Precondition, "resultant_y", "P must be monic in y of positive degree");
  }
  const Field& f = P.field();
  const std::size_t r = static_cast<std::size_t>(P.degree_y());
  const int dq = Q.is_zero() ? 0 : std::max(Q.degree_x(), 0);
  const int dyq = Q.is_zero() ? 0 : Q.degree_y();
  const int dp = std::max(P.degree_x(), 0);
  const u64 bound = static_cast<u64>(r) * dq + static_cast<u64>(dp) * dyq;
  if (bound + 1 >= f.modulus()) {
    throw Error(Error::Kind::Precondition, "resultant_y", "prime too small for evaluation points");
  }
  const BiPoly Qr = ypoly_rem(Q, P);
  const std::size_t npts = bound + 1;
  std::vector<u64> xs(npts);
  std::vector<std::vector<u64>> vals(r + 1, std::vector<u64>(npts));
  for (std::size_t k = 0; k < npts; ++k) {
    const u64 a = k;
    xs[k] = a;
    Poly pa = P.eval_x(a);
    Poly qa = Qr.eval_x(a);
    // Multiplication-by-Q matrix on basis 1, y, ..., y^(r-1); column j = y^j Q mod P.
    std::vector<u64> m(r * r, 0);
    Poly col = qa;
    for (std::size_t j = 0; j < r; ++j) {
      for (std::size_t i = 0; i < r; ++i) m[i * r + j] = col[i];
      col = poly_rem(col.shifted(1), pa);
    }
    std::vector<u64> cp = charpoly_scalar(f, std::move(m), r);
    for (std::size_t i = 0; i <= r; ++i) vals[i][k] = cp[i];
  }
  std::vector<Poly> out(r + 1);
  for (std::size_t i = 0; i <= r; ++i) out[i] = poly_interp(f, xs, vals[i]);
  return BiPoly(f, std::move(out));
}

}  // namespace polypow
