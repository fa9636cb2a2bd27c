#include "polypow/holo.hpp"

#include <algorithm>
#include <climits>

#include "polypow/kernels.hpp"

namespace polypow {

CFiniteSpec::CFiniteSpec(const Field& f, std::vector<Poly> coeffs, std::vector<Poly> initial)
    : field(&f), c(std::move(coeffs)), init(std::move(initial)) {
  if (c.empty()) throw Error(Error::Kind::Precondition, "spec", "order must be at least 1");
  if (c.size() != init.size()) throw Error(Error::Kind::Precondition, "spec", "need r coefficients and r initial terms");
  for (auto& p : c) {
    if (!p.field_ptr()) p = Poly(f);
  }
  for (auto& p : init) {
    if (!p.field_ptr()) p = Poly(f);
  }
}

int CFiniteSpec::d() const {
  int m = 0;
  for (const auto& p : c) m = std::max(m, p.degree());
  return m;
}

int CFiniteSpec::init_degree() const {
  int m = 0;
  for (const auto& p : init) m = std::max(m, p.degree());
  return m;
}

namespace {

// k (k-1) ... (k-i+1) evaluated at k + t, as a polynomial in k
Poly falling(const Field& f, std::size_t i, std::size_t t) {
  Poly r = Poly::constant(f, 1);
  for (std::size_t j = 0; j < i; ++j) {
    u64 c = f.sub(f.reduce64(t), f.reduce64(j));
    r = r * Poly(f, {c, 1});
  }
  return r;
}

// Values of several polynomials at k0, k0+1, ... by forward differences.
class Stepper {
 public:
  Stepper(const Field& f, const std::vector<Poly>& ps, u64 k0) : f_(f), n_(ps.size()), kern_(f.kernels()) {
    int deg = 0;
    for (const auto& p : ps) deg = std::max(deg, p.degree());
    D_ = static_cast<std::size_t>(deg);
    diff_.assign(D_ + 1, std::vector<u64>(n_, 0));
    std::vector<u64> v(D_ + 1);
    for (std::size_t t = 0; t < n_; ++t) {
      for (std::size_t j = 0; j <= D_; ++j) v[j] = poly_eval(ps[t], f.reduce64(k0 + j));
      for (std::size_t j = 0; j <= D_; ++j) {
        diff_[j][t] = v[0];
        for (std::size_t i = 0; i + j < D_; ++i) v[i] = f.sub(v[i + 1], v[i]);
      }
    }
  }
  const u64* values() const { return diff_[0].data(); }
  void step() {
    for (std::size_t j = 0; j < D_; ++j) kern_.add(f_, diff_[j].data(), diff_[j].data(), diff_[j + 1].data(), n_);
  }

 private:
  const Field& f_;
  std::size_t n_, D_;
  const simd::Kernels& kern_;
  std::vector<std::vector<u64>> diff_;
};

}  // namespace

Rec ode_to_rec(const DiffOp& L) {
  if (L.coeffs.empty() || std::all_of(L.coeffs.begin(), L.coeffs.end(), [](const Poly& q) { return q.is_zero(); })) {
    throw Error(Error::Kind::Precondition, "ode_to_rec", "zero operator");
  }
  const Field& f = L.field();
  // x^a d^i sends x^j to j^(i) x^(j-i+a); collect by e = a - i.
  long emin = LONG_MAX, emax = LONG_MIN;
  for (std::size_t i = 0; i < L.coeffs.size(); ++i) {
    const Poly& q = L.coeffs[i];
    for (std::size_t a = 0; a < q.size(); ++a) {
      if (q[a] == 0) continue;
      long e = static_cast<long>(a) - static_cast<long>(i);
      emin = std::min(emin, e);
      emax = std::max(emax, e);
    }
  }
  // The coefficient of x^m gives sum q_{i,a} (m-e)^(i) c_{m-e}; put k = m - emax.
  const std::size_t s = static_cast<std::size_t>(emax - emin);
  Rec rec;
  rec.p.assign(s + 1, Poly(f));
  for (std::size_t i = 0; i < L.coeffs.size(); ++i) {
    const Poly& q = L.coeffs[i];
    for (std::size_t a = 0; a < q.size(); ++a) {
      if (q[a] == 0) continue;
      long e = static_cast<long>(a) - static_cast<long>(i);
      std::size_t t = static_cast<std::size_t>(emax - e);
      rec.p[t] += falling(f, i, t).scaled(q[a]);
    }
  }
  rec.trivial_below = emax < 0 ? static_cast<std::size_t>(-emax) : 0;
  while (rec.p.size() > 1 && rec.p.back().is_zero()) rec.p.pop_back();
  if (rec.p.back().is_zero()) throw Error(Error::Kind::Internal, "ode_to_rec", "recurrence vanished");
  return rec;
}

std::vector<u64> companion_pow_mod(const CFiniteSpec& spec, u64 N, std::size_t s) {
  const Field& f = *spec.field;
  const std::size_t r = spec.r();
  std::vector<u64> out(s, 0);
  if (s == 0) return out;
  if (N < r) {
    const Poly& u = spec.init[N];
    for (std::size_t i = 0; i < s && i < u.size(); ++i) out[i] = u[i];
    return out;
  }
  std::vector<Poly> c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = spec.c[i].truncated(s);
  // Elements of (F_p[x]/x^s)[t] / (t^r - c_{r-1} t^{r-1} - ... - c_0).
  using Elem = std::vector<Poly>;
  auto mulmod = [&](const Elem& a, const Elem& b) {
    Elem prod(2 * r - 1, Poly(f));
    for (std::size_t i = 0; i < r; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < r; ++j) {
        if (!b[j].is_zero()) prod[i + j] += mul_trunc(a[i], b[j], s);
      }
    }
    for (std::size_t m = 2 * r - 1; m-- > r;) {
      if (prod[m].is_zero()) continue;
      for (std::size_t i = 0; i < r; ++i) {
        if (!c[i].is_zero()) prod[m - r + i] += mul_trunc(prod[m], c[i], s);
      }
    }
    prod.resize(r);
    return prod;
  };
  Elem base(r, Poly(f));
  if (r == 1) {
    base[0] = c[0];
  } else {
    base[1] = Poly::constant(f, 1);
  }
  Elem acc(r, Poly(f));
  acc[0] = Poly::constant(f, 1);
  for (int bit = 63; bit >= 0; --bit) {
    acc = mulmod(acc, acc);
    if ((N >> bit) & 1) acc = mulmod(acc, base);
  }
  Poly u(f);
  for (std::size_t j = 0; j < r; ++j) {
    if (!acc[j].is_zero()) u += mul_trunc(acc[j], spec.init[j], s);
  }
  for (std::size_t i = 0; i < s && i < u.size(); ++i) out[i] = u[i];
  return out;
}

std::vector<u64> unroll(const Rec& rec, const std::vector<u64>& init, u64 K, const std::map<u64, u64>& known) {
  const Field& f = rec.field();
  const std::size_t s = rec.order();
  if (init.size() != s) throw Error(Error::Kind::Precondition, "unroll", "need exactly s initial values");
  if (K >= f.modulus()) throw Error(Error::Kind::Precondition, "unroll", "index range reaches the characteristic");
  std::vector<u64> c(K + 1, 0);
  std::copy_n(init.begin(), std::min<std::size_t>(s, K + 1), c.begin());
  if (K + 1 <= s) return c;
  const simd::Kernels& kern = f.kernels();
  Stepper all(f, rec.p, 0);
  Stepper lead(f, {rec.p[s]}, 0);
  constexpr std::size_t kBlock = 64;
  u64 lv[kBlock];
  const u64 last = K - s;
  for (u64 k0 = 0; k0 <= last; k0 += kBlock) {
    const std::size_t nb = static_cast<std::size_t>(std::min<u64>(kBlock, last - k0 + 1));
    for (std::size_t i = 0; i < nb; ++i) {
      lv[i] = lead.values()[0];
      lead.step();
    }
    f.batch_inv(lv, nb);
    for (std::size_t i = 0; i < nb; ++i) {
      const u64 k = k0 + i;
      const u64* pv = all.values();
      if (lv[i] == 0) {
        auto it = known.find(k + s);
        if (it == known.end()) {
          throw Error(Error::Kind::Precondition, "unroll", "no value supplied for singular index " + std::to_string(k + s));
        }
        c[k + s] = f.reduce64(it->second);
      } else {
        u64 acc = s ? kern.dot(f, pv, c.data() + k, s) : 0;
        c[k + s] = f.mul(f.neg(acc), lv[i]);
      }
      all.step();
    }
  }
  return c;
}

std::vector<u64> detect_problem_indices(const Rec& rec, u64 K) {
  const std::size_t s = rec.order();
  std::vector<u64> out;
  if (K < s) return out;
  if (K >= rec.field().modulus()) {
    throw Error(Error::Kind::Precondition, "detect_problem_indices", "index range reaches the characteristic");
  }
  Stepper lead(rec.field(), {rec.p[s]}, 0);
  for (u64 k = 0; k <= K - s; ++k) {
    if (lead.values()[0] == 0) out.push_back(k + s);
    lead.step();
  }
  return out;
}

u64 choose_ordinary_point(const DiffOp& L) {
  const Poly& lead = L.coeffs.back();
  for (u64 c = 1;; ++c) {
    if (poly_eval(lead, c) != 0) return c;
  }
}

DiffOp shift_ode(const DiffOp& L, u64 c) {
  DiffOp out;
  for (const auto& q : L.coeffs) out.coeffs.push_back(taylor_shift(q, c));
  return out;
}

CFiniteSpec shift_spec(const CFiniteSpec& spec, u64 c) {
  std::vector<Poly> cs, in;
  for (const auto& p : spec.c) cs.push_back(taylor_shift(p, c));
  for (const auto& p : spec.init) in.push_back(taylor_shift(p, c));
  return CFiniteSpec(*spec.field, std::move(cs), std::move(in));
}

std::map<u64, u64> recover_coefficients(const Field& f, const std::vector<u64>& d, u64 c,
                                        const std::vector<u64>& targets) {
  std::map<u64, u64> out;
  if (targets.empty()) return out;
  FactorialTable tab(f, std::max<u64>(d.size(), 1));
  const u64 mc = f.neg(f.reduce64(c));
  for (u64 i : targets) {
    // c_i = sum_k d_k binom(k, i) (-c)^(k-i)
    u64 acc = 0, pw = 1;
    for (u64 k = i; k < d.size(); ++k) {
      if (d[k] != 0) acc = f.add(acc, f.mul(d[k], f.mul(tab.binom(k, i), pw)));
      pw = f.mul(pw, mc);
    }
    out[i] = acc;
  }
  return out;
}

}  // namespace polypow
