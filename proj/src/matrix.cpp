#include "polypow/matrix.hpp"

#include <algorithm>

#include "polypow/kernels.hpp"
#include "polypow/ntt.hpp"

namespace polypow {

PolyMatrix::PolyMatrix(const Field& f, std::size_t r) : f_(&f), r_(r), e_(r * r, Poly(f)) {}

PolyMatrix::PolyMatrix(const Field& f, std::size_t r, std::vector<Poly> entries)
    : f_(&f), r_(r), e_(std::move(entries)) {
  if (e_.size() != r * r) throw Error(Error::Kind::Precondition, "matrix", "entry count is not r*r");
  for (auto& p : e_) {
    if (p.is_zero() && !p.field_ptr()) p = Poly(f);
  }
}

PolyMatrix PolyMatrix::identity(const Field& f, std::size_t r) {
  PolyMatrix m(f, r);
  for (std::size_t i = 0; i < r; ++i) m.at(i, i) = Poly::constant(f, 1);
  return m;
}

int PolyMatrix::degree() const {
  int d = Poly::kMinusInfinity;
  for (const auto& p : e_) d = std::max(d, p.degree());
  return d;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  PolyMatrix r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

PolyMatrix PolyMatrix::times(const Poly& c) const {
  PolyMatrix r(*this);
  for (auto& p : r.e_) p = p * c;
  return r;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](const Poly& p) { return p.is_zero(); });
}

std::vector<u64> PolyMatrix::eval(u64 a) const {
  std::vector<u64> m(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) m[i] = poly_eval(e_[i], a);
  return m;
}

PolyMatrix matmul_naive(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t r = a.rows();
  const Field& f = a.field();
  PolyMatrix c(f, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      Poly s(f);
      for (std::size_t k = 0; k < r; ++k) {
        if (!a.at(i, k).is_zero() && !b.at(k, j).is_zero()) s += a.at(i, k) * b.at(k, j);
      }
      c.at(i, j) = std::move(s);
    }
  }
  return c;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (r_ != o.r_) throw Error(Error::Kind::Precondition, "matrix", "size mismatch");
  const int da = degree(), db = o.degree();
  if (da < 0 || db < 0) return PolyMatrix(*f_, r_);
  const std::size_t len = static_cast<std::size_t>(da + db + 1);
  unsigned lg = 0;
  while ((std::size_t{1} << lg) < len) ++lg;
  if (static_cast<std::size_t>(std::min(da, db)) + 1 <= mul_thresholds().schoolbook ||
      !detail::ntt_supported(*f_, lg)) {
    return matmul_naive(*this, o);
  }
  // Transform every entry once, multiply-accumulate pointwise, transform back.
  const Field& f = *f_;
  const std::size_t n = std::size_t{1} << lg;
  const bool same = this == &o;
  auto transform = [&](const std::vector<Poly>& src) {
    std::vector<std::vector<u64>> t(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (src[i].is_zero()) continue;
      t[i].assign(n, 0);
      std::copy(src[i].coeffs().begin(), src[i].coeffs().end(), t[i].begin());
      detail::ntt_forward(f, t[i].data(), lg);
    }
    return t;
  };
  std::vector<std::vector<u64>> ta = transform(e_);
  std::vector<std::vector<u64>> tb_own;
  if (!same) tb_own = transform(o.e_);
  const auto& tb = same ? ta : tb_own;
  const simd::Kernels& kern = f.kernels();
  PolyMatrix c(f, r_);
  std::vector<u64> acc(n), tmp(n);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < r_; ++j) {
      bool any = false;
      for (std::size_t k = 0; k < r_; ++k) {
        const auto& x = ta[i * r_ + k];
        const auto& y = tb[k * r_ + j];
        if (x.empty() || y.empty()) continue;
        if (!any) {
          kern.mul(f, acc.data(), x.data(), y.data(), n);
          any = true;
        } else {
          kern.mul(f, tmp.data(), x.data(), y.data(), n);
          kern.add(f, acc.data(), acc.data(), tmp.data(), n);
        }
      }
      if (!any) continue;
      detail::ntt_inverse(f, acc.data(), lg);
      c.at(i, j) = Poly(f, std::vector<u64>(acc.begin(), acc.begin() + static_cast<std::ptrdiff_t>(len)));
    }
  }
  return c;
}

std::vector<u64> charpoly_scalar(const Field& f, std::vector<u64> a, std::size_t r) {
  auto H = [&](std::size_t i, std::size_t j) -> u64& { return a[i * r + j]; };
  // Similarity transform to upper Hessenberg form.
  for (std::size_t j = 0; j + 2 < r; ++j) {
    std::size_t piv = r;
    for (std::size_t i = j + 1; i < r; ++i) {
      if (H(i, j) != 0) {
        piv = i;
        break;
      }
    }
    if (piv == r) continue;
    if (piv != j + 1) {
      for (std::size_t k = 0; k < r; ++k) std::swap(H(piv, k), H(j + 1, k));
      for (std::size_t k = 0; k < r; ++k) std::swap(H(k, piv), H(k, j + 1));
    }
    const u64 inv = f.inv(H(j + 1, j));
    for (std::size_t i = j + 2; i < r; ++i) {
      u64 u = f.mul(H(i, j), inv);
      if (u == 0) continue;
      for (std::size_t k = 0; k < r; ++k) H(i, k) = f.sub(H(i, k), f.mul(u, H(j + 1, k)));
      for (std::size_t k = 0; k < r; ++k) H(k, j + 1) = f.add(H(k, j + 1), f.mul(u, H(k, i)));
    }
  }
  // p_m = (t - h_{m-1,m-1}) p_{m-1} - sum_i (prod of subdiagonal) h_{m-i-1,m-1} p_{m-i-1}
  std::vector<std::vector<u64>> p(r + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= r; ++m) {
    std::vector<u64> cur(m + 1, 0);
    const u64 hmm = H(m - 1, m - 1);
    for (std::size_t k = 0; k < m; ++k) {
      cur[k + 1] = f.add(cur[k + 1], p[m - 1][k]);
      cur[k] = f.sub(cur[k], f.mul(hmm, p[m - 1][k]));
    }
    u64 t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = f.mul(t, H(m - i, m - i - 1));
      if (t == 0) break;
      u64 coef = f.mul(t, H(m - i - 1, m - 1));
      for (std::size_t k = 0; k < p[m - i - 1].size(); ++k) {
        cur[k] = f.sub(cur[k], f.mul(coef, p[m - i - 1][k]));
      }
    }
    p[m] = std::move(cur);
  }
  return p[r];
}

BiPoly charpoly(const PolyMatrix& m) {
  const Field& f = m.field();
  const std::size_t r = m.rows();
  const int d = std::max(m.degree(), 0);
  const u64 npts = static_cast<u64>(r) * d + 1;
  if (npts >= f.modulus()) throw Error(Error::Kind::Precondition, "charpoly", "prime must exceed r*d");
  std::vector<u64> xs(npts);
  std::vector<std::vector<u64>> vals(r + 1, std::vector<u64>(npts));
  for (u64 k = 0; k < npts; ++k) {
    xs[k] = k;
    std::vector<u64> cp = charpoly_scalar(f, m.eval(k), r);
    for (std::size_t i = 0; i <= r; ++i) vals[i][k] = cp[i];
  }
  std::vector<Poly> out(r + 1);
  for (std::size_t i = 0; i <= r; ++i) out[i] = poly_interp(f, xs, vals[i]);
  return BiPoly(f, std::move(out));
}

PolyMatrix eval_at_matrix(const BiPoly& p, const PolyMatrix& m) {
  const Field& f = m.field();
  const std::size_t r = m.rows();
  if (p.is_zero()) return PolyMatrix(f, r);
  PolyMatrix acc = PolyMatrix::identity(f, r).times(p.lc());
  for (std::size_t j = p.size() - 1; j-- > 0;) {
    acc = acc * m;
    if (!p[j].is_zero()) acc = acc + PolyMatrix::identity(f, r).times(p[j]);
  }
  return acc;
}

}  // namespace polypow
