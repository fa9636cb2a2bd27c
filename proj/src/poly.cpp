#include "polypow/poly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "polypow/kernels.hpp"
#include "polypow/ntt.hpp"

namespace polypow {

namespace {

unsigned ceil_log2(std::size_t n) {
  unsigned k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

u64 reduce_wide(const Field& f, u128 s) {
  u64 hi = f.reduce(static_cast<u64>(s >> 64));
  return f.reduce((static_cast<u128>(hi) << 64) | static_cast<u64>(s));
}

// out[0 .. na+nb-1) = a * b
void school_raw(const Field& f, const u64* a, std::size_t na, const u64* b, std::size_t nb, u64* out) {
  if (na < nb) {
    std::swap(a, b);
    std::swap(na, nb);
  }
  const std::size_t n = na + nb - 1;
  if (nb <= f.lazy_terms()) {
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t lo = k >= nb - 1 ? k - (nb - 1) : 0;
      std::size_t hi = std::min(k, na - 1);
      u128 s = 0;
      for (std::size_t i = lo; i <= hi; ++i) s += static_cast<u128>(a[i]) * b[k - i];
      out[k] = reduce_wide(f, s);
    }
    return;
  }
  std::fill(out, out + n, 0);
  const simd::Kernels& kern = f.kernels();
  for (std::size_t i = 0; i < nb; ++i) kern.axpy(f, out + i, a, b[i], na);
}

void kara_raw(const Field& f, const u64* a, const u64* b, std::size_t n, u64* out, std::size_t base) {
  if (n <= base) {
    school_raw(f, a, n, b, n, out);
    return;
  }
  const std::size_t m = n / 2, h = n - m;
  std::vector<u64> z0(2 * m - 1), z2(2 * h - 1), z1(2 * h - 1), sa(h), sb(h);
  kara_raw(f, a, b, m, z0.data(), base);
  kara_raw(f, a + m, b + m, h, z2.data(), base);
  for (std::size_t i = 0; i < h; ++i) {
    sa[i] = i < m ? f.add(a[i], a[m + i]) : a[m + i];
    sb[i] = i < m ? f.add(b[i], b[m + i]) : b[m + i];
  }
  kara_raw(f, sa.data(), sb.data(), h, z1.data(), base);
  const simd::Kernels& kern = f.kernels();
  kern.sub(f, z1.data(), z1.data(), z0.data(), z0.size());
  kern.sub(f, z1.data(), z1.data(), z2.data(), z2.size());
  std::fill(out, out + 2 * n - 1, 0);
  std::copy(z0.begin(), z0.end(), out);
  std::copy(z2.begin(), z2.end(), out + 2 * m);
  kern.add(f, out + m, out + m, z1.data(), z1.size());
}

std::vector<u64> ntt_product(const Field& f, const std::vector<u64>& a, const std::vector<u64>& b, bool square) {
  const std::size_t len = a.size() + b.size() - 1;
  const unsigned lg = ceil_log2(len);
  const std::size_t n = std::size_t{1} << lg;
  std::vector<u64> fa(n, 0);
  std::copy(a.begin(), a.end(), fa.begin());
  detail::ntt_forward(f, fa.data(), lg);
  const simd::Kernels& kern = f.kernels();
  if (square) {
    kern.mul(f, fa.data(), fa.data(), fa.data(), n);
  } else {
    std::vector<u64> fb(n, 0);
    std::copy(b.begin(), b.end(), fb.begin());
    detail::ntt_forward(f, fb.data(), lg);
    kern.mul(f, fa.data(), fa.data(), fb.data(), n);
  }
  detail::ntt_inverse(f, fa.data(), lg);
  fa.resize(len);
  return fa;
}

}  // namespace

Poly Poly::from_ints(const Field& f, const std::vector<i64>& coeffs) {
  std::vector<u64> c(coeffs.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.from_int(coeffs[i]);
  return Poly(f, std::move(c));
}

Poly Poly::monomial(const Field& f, u64 c, std::size_t k) {
  std::vector<u64> v(k + 1, 0);
  v[k] = f.reduce64(c);
  return Poly(f, std::move(v));
}

const Field& Poly::field() const {
  if (!f_) throw Error(Error::Kind::Internal, "poly", "polynomial has no field attached");
  return *f_;
}

const Field& common_field(const Poly& a, const Poly& b) {
  if (a.field_ptr() && b.field_ptr() && a.field_ptr() != b.field_ptr()) {
    throw Error(Error::Kind::Precondition, "poly", "operands from different fields");
  }
  if (a.field_ptr()) return *a.field_ptr();
  return b.field();
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& v : r.c_) v = f_->neg(v);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  const Field& f = common_field(*this, o);
  f_ = &f;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  f.kernels().add(f, c_.data(), c_.data(), o.c_.data(), o.c_.size());
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.is_zero()) return *this;
  const Field& f = common_field(*this, o);
  f_ = &f;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  f.kernels().sub(f, c_.data(), c_.data(), o.c_.data(), o.c_.size());
  normalize();
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = poly_mul(*this, o);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) { return poly_mul(a, b); }

Poly Poly::scaled(u64 c) const {
  if (is_zero()) return *this;
  c = f_->reduce64(c);
  if (c == 0) return Poly(*f_);
  std::vector<u64> r(c_.size());
  f_->kernels().scale(*f_, r.data(), c_.data(), c, c_.size());
  return Poly(*f_, std::move(r));
}

Poly Poly::monic() const {
  if (is_zero() || lc() == 1) return *this;
  return scaled(f_->inv(lc()));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return f_ ? Poly(*f_) : Poly();
  std::vector<u64> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_->mul(c_[i], f_->reduce64(i));
  return Poly(*f_, std::move(r));
}

Poly Poly::truncated(std::size_t n) const {
  if (c_.size() <= n) return *this;
  return Poly(*f_, std::vector<u64>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
}

Poly Poly::shifted(std::size_t k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<u64> r(c_.size() + k, 0);
  std::copy(c_.begin(), c_.end(), r.begin() + static_cast<std::ptrdiff_t>(k));
  return Poly(*f_, std::move(r));
}

u64 Poly::eval(u64 a) const {
  u64 r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = f_->add(f_->mul(r, a), c_[i]);
  return r;
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(c_[i]);
  }
  return s;
}

MulThresholds& mul_thresholds() {
  static MulThresholds t;
  return t;
}

Poly mul_schoolbook(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(common_field(a, b));
  const Field& f = common_field(a, b);
  std::vector<u64> out(a.size() + b.size() - 1);
  school_raw(f, a.coeffs().data(), a.size(), b.coeffs().data(), b.size(), out.data());
  return Poly(f, std::move(out));
}

Poly mul_karatsuba(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(common_field(a, b));
  const Field& f = common_field(a, b);
  const Poly& lo = a.size() <= b.size() ? a : b;
  const Poly& hi = a.size() <= b.size() ? b : a;
  const std::size_t n = lo.size();
  const std::size_t base = std::max<std::size_t>(mul_thresholds().schoolbook, 4);
  std::vector<u64> out(a.size() + b.size() - 1, 0);
  std::vector<u64> chunk(n), part(2 * n - 1);
  const simd::Kernels& kern = f.kernels();
  for (std::size_t s = 0; s < hi.size(); s += n) {
    std::size_t len = std::min(n, hi.size() - s);
    std::fill(chunk.begin(), chunk.end(), 0);
    std::copy(hi.coeffs().begin() + static_cast<std::ptrdiff_t>(s),
              hi.coeffs().begin() + static_cast<std::ptrdiff_t>(s + len), chunk.begin());
    kara_raw(f, chunk.data(), lo.coeffs().data(), n, part.data(), base);
    std::size_t take = std::min(part.size(), out.size() - s);
    kern.add(f, out.data() + s, out.data() + s, part.data(), take);
  }
  return Poly(f, std::move(out));
}

Poly mul_ntt(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(common_field(a, b));
  const Field& f = common_field(a, b);
  if (!detail::ntt_supported(f, ceil_log2(a.size() + b.size() - 1))) {
    throw Error(Error::Kind::Precondition, "poly_mul", "prime lacks roots of unity for this transform size");
  }
  bool square = &a == &b || a.coeffs().data() == b.coeffs().data();
  return Poly(f, ntt_product(f, a.coeffs(), b.coeffs(), square));
}

Poly mul_crt(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(common_field(a, b));
  const Field& f = common_field(a, b);
  const std::size_t len = a.size() + b.size() - 1;
  const unsigned lg = ceil_log2(len);
  // Coefficients of the integer product are < min(na, nb) (p-1)^2.
  double need = std::log2(static_cast<double>(std::min(a.size(), b.size()))) +
                2.0 * std::log2(static_cast<double>(f.modulus())) + 1.0;
  std::vector<const Field*> qs;
  double have = 0;
  for (u64 q : detail::crt_primes()) {
    const Field& fq = Field::of(q);
    if (!detail::ntt_supported(fq, lg)) continue;
    qs.push_back(&fq);
    have += std::log2(static_cast<double>(q)) - 1e-9;
    if (have > need) break;
  }
  if (have <= need) throw Error(Error::Kind::Precondition, "poly_mul", "not enough CRT primes");
  const std::size_t k = qs.size();
  std::vector<std::vector<u64>> res(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Field& fq = *qs[i];
    std::vector<u64> ra(a.size()), rb(b.size());
    for (std::size_t j = 0; j < ra.size(); ++j) ra[j] = fq.reduce64(a.coeffs()[j]);
    for (std::size_t j = 0; j < rb.size(); ++j) rb[j] = fq.reduce64(b.coeffs()[j]);
    res[i] = ntt_product(fq, ra, rb, false);
  }
  // Garner mixed radix: x = y0 + y1 q0 + y2 q0 q1 + ...
  std::vector<std::vector<u64>> qmod(k, std::vector<u64>(k));  // q_j mod q_i
  std::vector<u64> prod_inv(k);                                 // 1 / (q_0 ... q_{i-1}) mod q_i
  std::vector<u64> prod_p(k);                                   // q_0 ... q_{i-1} mod p
  u64 pp = 1;
  for (std::size_t i = 0; i < k; ++i) {
    const Field& fq = *qs[i];
    u64 pr = 1;
    for (std::size_t j = 0; j < i; ++j) {
      qmod[i][j] = fq.reduce64(qs[j]->modulus());
      pr = fq.mul(pr, qmod[i][j]);
    }
    prod_inv[i] = fq.inv(pr);
    prod_p[i] = pp;
    pp = f.mul(pp, f.reduce64(qs[i]->modulus()));
  }
  std::vector<u64> out(len);
  std::vector<u64> y(k);
  for (std::size_t t = 0; t < len; ++t) {
    u64 acc_p = 0;
    for (std::size_t i = 0; i < k; ++i) {
      const Field& fq = *qs[i];
      u64 acc = 0, pr = 1;
      for (std::size_t j = 0; j < i; ++j) {
        acc = fq.add(acc, fq.mul(fq.reduce64(y[j]), pr));
        pr = fq.mul(pr, qmod[i][j]);
      }
      y[i] = fq.mul(fq.sub(res[i][t], acc), prod_inv[i]);
      acc_p = f.add(acc_p, f.mul(f.reduce64(y[i]), prod_p[i]));
    }
    out[t] = acc_p;
  }
  return Poly(f, std::move(out));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) {
    if (!a.field_ptr() && !b.field_ptr()) return Poly();
    return Poly(common_field(a, b));
  }
  const Field& f = common_field(a, b);
  const std::size_t m = std::min(a.size(), b.size());
  const MulThresholds& th = mul_thresholds();
  if (m <= th.schoolbook) return mul_schoolbook(a, b);
  if (m <= th.karatsuba) return mul_karatsuba(a, b);
  if (detail::ntt_supported(f, ceil_log2(a.size() + b.size() - 1))) return mul_ntt(a, b);
  return mul_crt(a, b);
}

Poly mul_trunc(const Poly& a, const Poly& b, std::size_t n) {
  return poly_mul(a.truncated(n), b.truncated(n)).truncated(n);
}

std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(Error::Kind::DivisionByZero, "poly_divrem", "division by the zero polynomial");
  const Field& f = common_field(a, b);
  if (a.size() < b.size()) return {Poly(f), a};
  const std::size_t na = a.size(), nb = b.size();
  std::vector<u64> r = a.coeffs();
  std::vector<u64> q(na - nb + 1, 0);
  const u64 inv = f.inv(b.lc());
  const simd::Kernels& kern = f.kernels();
  const u64* bc = b.coeffs().data();
  for (std::size_t i = na - nb + 1; i-- > 0;) {
    u64 c = f.mul(r[i + nb - 1], inv);
    q[i] = c;
    if (c) kern.axpy(f, r.data() + i, bc, f.neg(c), nb - 1);
    r[i + nb - 1] = 0;
  }
  r.resize(nb - 1);
  return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly poly_rem(const Poly& a, const Poly& b) {
  if (a.size() < b.size() && !b.is_zero()) return a;
  return poly_divrem(a, b).second;
}

Poly poly_div_exact(const Poly& a, const Poly& b) {
  auto [q, r] = poly_divrem(a, b);
  if (!r.is_zero()) throw Error(Error::Kind::Internal, "poly_div_exact", "division is not exact");
  return q;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) throw Error(Error::Kind::Precondition, "poly_gcd", "gcd of two zero polynomials");
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = poly_rem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

ExtGcd poly_ext_gcd(const Poly& a, const Poly& b) {
  const Field& f = common_field(a, b);
  if (a.is_zero() && b.is_zero()) throw Error(Error::Kind::Precondition, "poly_ext_gcd", "both operands zero");
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(f, 1), s1(f);
  Poly t0(f), t1 = Poly::constant(f, 1);
  while (!r1.is_zero()) {
    auto [q, r] = poly_divrem(r0, r1);
    Poly s2 = s0 - q * s1;
    Poly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  u64 li = f.inv(r0.lc());
  return {r0.scaled(li), s0.scaled(li), t0.scaled(li)};
}

Poly poly_inv_mod(const Poly& a, const Poly& m) {
  ExtGcd e = poly_ext_gcd(poly_rem(a, m), m);
  if (!e.g.is_one()) throw Error(Error::Kind::DivisionByZero, "poly_inv_mod", "not invertible modulo m");
  return poly_rem(e.s, m);
}

Poly poly_pow(const Poly& a, u64 e) {
  const Field& f = a.field();
  Poly r = Poly::constant(f, 1), base = a;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Poly SquarefreeFactorization::star() const {
  Poly r;
  bool first = true;
  for (const auto& [q, m] : factors) {
    r = first ? q : r * q;
    first = false;
  }
  return r;
}

Poly SquarefreeFactorization::minus() const {
  Poly r;
  bool first = true;
  for (const auto& [q, m] : factors) {
    if (m < 2) continue;
    Poly t = poly_pow(q, m - 1);
    r = first ? t : r * t;
    first = false;
  }
  return r;
}

Poly SquarefreeFactorization::expand() const {
  Poly r;
  bool first = true;
  for (const auto& [q, m] : factors) {
    Poly t = poly_pow(q, m);
    r = first ? t : r * t;
    first = false;
  }
  if (first) return r;
  return r.scaled(lc);
}

SquarefreeFactorization yun_squarefree(const Poly& q) {
  if (q.is_zero()) throw Error(Error::Kind::Precondition, "yun_squarefree", "zero polynomial");
  const Field& f = q.field();
  if (static_cast<u64>(q.degree()) >= f.modulus()) {
    throw Error(Error::Kind::Precondition, "yun_squarefree", "degree must be below the characteristic");
  }
  SquarefreeFactorization out;
  out.lc = q.lc();
  Poly g = q.monic();
  if (g.degree() == 0) return out;
  Poly gp = g.derivative();
  Poly a0 = poly_gcd(g, gp);
  Poly b = poly_div_exact(g, a0);
  Poly c = poly_div_exact(gp, a0);
  Poly d = c - b.derivative();
  unsigned i = 1;
  while (b.degree() > 0) {
    Poly a = d.is_zero() ? b.monic() : poly_gcd(b, d);
    if (a.degree() > 0) out.factors.emplace_back(a, i);
    b = poly_div_exact(b, a);
    c = poly_div_exact(d, a);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

Poly taylor_shift(const Poly& a, u64 c) {
  if (a.is_zero()) return a;
  const Field& f = a.field();
  c = f.reduce64(c);
  if (c == 0 || a.degree() == 0) return a;
  const std::size_t n = a.size();
  if (n <= 64 || n - 1 >= f.modulus()) {
    std::vector<u64> r(n, 0);
    // Horner: r = r * (x + c) + a_i
    std::size_t len = 0;
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = len; j > 0; --j) r[j] = f.add(r[j - 1], f.mul(r[j], c));
      r[0] = f.add(f.mul(r[0], c), a.coeffs()[i]);
      if (len < n - 1) ++len;
    }
    return Poly(f, std::move(r));
  }
  FactorialTable ft(f, n - 1);
  std::vector<u64> A(n), E(n);
  u64 cp = 1;
  for (std::size_t i = 0; i < n; ++i) {
    A[n - 1 - i] = f.mul(a.coeffs()[i], ft.fact(i));
    E[i] = f.mul(cp, ft.inv_fact(i));
    cp = f.mul(cp, c);
  }
  Poly prod = poly_mul(Poly(f, std::move(A)), Poly(f, std::move(E)));
  std::vector<u64> r(n);
  for (std::size_t k = 0; k < n; ++k) r[k] = f.mul(prod[n - 1 - k], ft.inv_fact(k));
  return Poly(f, std::move(r));
}

u64 poly_eval(const Poly& a, u64 x) { return a.is_zero() ? 0 : a.eval(x); }

std::vector<Poly> poly_interp_many(const Field& f, const std::vector<u64>& xs,
                                   const std::vector<std::vector<u64>>& ys) {
  const std::size_t n = xs.size();
  for (const auto& y : ys) {
    if (y.size() != n) throw Error(Error::Kind::Precondition, "poly_interp", "length mismatch");
  }
  std::vector<u64> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error(Error::Kind::Precondition, "poly_interp", "duplicate abscissa");
  }
  std::vector<Poly> out;
  if (n == 0) {
    out.assign(ys.size(), Poly(f));
    return out;
  }
  // Newton divided differences; the inverted gaps are shared by every value vector.
  std::vector<std::vector<u64>> coef = ys;
  std::vector<u64> den(n);
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) den[i - j] = f.sub(xs[i], xs[i - j]);
    f.batch_inv(den.data(), n - j);
    for (auto& c : coef) {
      for (std::size_t i = n - 1; i >= j; --i) c[i] = f.mul(f.sub(c[i], c[i - 1]), den[i - j]);
    }
  }
  for (const auto& c : coef) {
    std::vector<u64> r(n, 0);
    r[0] = c[n - 1];
    std::size_t len = 1;
    for (std::size_t i = n - 1; i-- > 0;) {
      // r = r * (x - xs[i]) + c[i]
      u64 neg = f.neg(xs[i]);
      for (std::size_t j = len; j > 0; --j) r[j] = f.add(r[j - 1], f.mul(r[j], neg));
      r[0] = f.add(f.mul(r[0], neg), c[i]);
      ++len;
    }
    out.emplace_back(f, std::move(r));
  }
  return out;
}

Poly poly_interp(const Field& f, const std::vector<u64>& xs, const std::vector<u64>& ys) {
  if (xs.size() != ys.size()) throw Error(Error::Kind::Precondition, "poly_interp", "length mismatch");
  return poly_interp_many(f, xs, {ys}).front();
}

Poly poly_reverse(const Poly& a, std::size_t r) {
  if (a.is_zero()) return a;
  if (static_cast<std::size_t>(a.degree()) > r) {
    throw Error(Error::Kind::Precondition, "poly_reverse", "reversal degree below polynomial degree");
  }
  std::vector<u64> c(r + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) c[r - i] = a.coeffs()[i];
  return Poly(a.field(), std::move(c));
}

u64 poly_resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const Field& f = common_field(a, b);
  Poly A = a, B = b;
  u64 res = 1;
  while (B.degree() > 0) {
    Poly R = poly_rem(A, B);
    if (R.is_zero()) return 0;
    std::size_t da = A.degree(), db = B.degree(), dr = R.degree();
    if ((da & 1) && (db & 1)) res = f.neg(res);
    res = f.mul(res, f.pow(B.lc(), da - dr));
    A = std::move(B);
    B = std::move(R);
  }
  return f.mul(res, f.pow(B.lc(), static_cast<u64>(A.degree())));
}

Poly parse_poly(const Field& f, const std::string& line) {
  std::vector<u64> c;
  const char* p = line.data();
  const char* end = p + line.size();
  while (p < end) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p == end) break;
    bool neg = false;
    if (*p == '-') {
      neg = true;
      ++p;
    } else if (*p == '+') {
      ++p;
    }
    u64 v = 0;
    auto [q, ec] = std::from_chars(p, end, v);
    if (ec != std::errc() || q == p || (q < end && *q != ' ' && *q != '\t' && *q != '\r')) {
      throw Error(Error::Kind::Parse, "parse", "malformed polynomial coefficient in '" + line + "'");
    }
    v %= f.modulus();
    c.push_back(neg ? f.neg(v) : v);
    p = q;
  }
  if (c.empty()) throw Error(Error::Kind::Parse, "parse", "empty polynomial line");
  return Poly(f, std::move(c));
}

}  // namespace polypow
