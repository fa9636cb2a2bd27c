#pragma once

// Hermite reduction and the parameterized reduction, written once for
// polynomials in y over F_p (Poly) and over F_p(x) (YPolyL).

#include <vector>

#include "polypow/telescope.hpp"

namespace polypow::detail {

template <class YP>
struct YOps;

template <>
struct YOps<Poly> {
  using K = u64;
  static Poly zero(const Field& f) { return Poly(f); }
  static Poly one(const Field& f) { return Poly::constant(f, 1); }
  static Poly y(const Field& f) { return Poly::x(f); }
  static K kconst(const Field& f, u64 c) { return f.reduce64(c); }
  static K kmul(const Field& f, const K& a, const K& b) { return f.mul(a, b); }
  static K kinv(const Field& f, const K& a) { return f.inv(a); }
  static bool kzero(const K& a) { return a == 0; }
  static K coeff(const Poly& p, std::size_t i) { return p[i]; }
  static K lc(const Poly& p) { return p.lc(); }
  static Poly from_coeffs(const Field& f, std::vector<K> c) { return Poly(f, std::move(c)); }
  static Poly times(const Poly& p, const K& c) { return p.scaled(c); }
  static Poly dy(const Poly& p) { return p.derivative(); }
  static Poly monic(const Poly& p) { return p.monic(); }
  static std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) { return poly_divrem(a, b); }
  static Poly rem(const Poly& a, const Poly& b) { return poly_rem(a, b); }
  static Poly div_exact(const Poly& a, const Poly& b) { return poly_div_exact(a, b); }
  static Poly inv_mod(const Poly& a, const Poly& m) { return poly_inv_mod(a, m); }
  static std::size_t size(const Poly& p) { return p.size(); }
};

template <>
struct YOps<YPolyL> {
  using K = RatFun;
  static YPolyL zero(const Field& f) { return YPolyL(f); }
  static YPolyL one(const Field& f) { return YPolyL::constant(RatFun::constant(f, 1)); }
  static YPolyL y(const Field& f) { return YPolyL::y_power(f, 1); }
  static K kconst(const Field& f, u64 c) { return RatFun::constant(f, c); }
  static K kmul(const Field&, const K& a, const K& b) { return a * b; }
  static K kinv(const Field&, const K& a) { return a.inverse(); }
  static bool kzero(const K& a) { return a.is_zero(); }
  static K coeff(const YPolyL& p, std::size_t i) { return p.coeff(i); }
  static K lc(const YPolyL& p) { return p.lc(); }
  static YPolyL from_coeffs(const Field& f, std::vector<K> c) { return YPolyL(f, std::move(c)); }
  static YPolyL times(const YPolyL& p, const K& c) { return p.times(c); }
  static YPolyL dy(const YPolyL& p) { return p.dy(); }
  static YPolyL monic(const YPolyL& p) { return p.monic(); }
  static std::pair<YPolyL, YPolyL> divrem(const YPolyL& a, const YPolyL& b) { return ypoly_divrem(a, b); }
  static YPolyL rem(const YPolyL& a, const YPolyL& b) { return ypoly_rem(a, b); }
  static YPolyL div_exact(const YPolyL& a, const YPolyL& b) { return ypoly_div_exact(a, b); }
  static YPolyL inv_mod(const YPolyL& a, const YPolyL& m) { return ypoly_inv_mod(a, m); }
  static std::size_t size(const YPolyL& p) { return p.size(); }
};

// Q = lc * prod V_k^m_k with V_k monic, squarefree, pairwise coprime.
template <class YP>
struct Factored {
  using K = typename YOps<YP>::K;
  const Field* f;
  K lc;
  std::vector<std::pair<YP, unsigned>> factors;

  YP product(unsigned (*exponent)(unsigned)) const {
    using O = YOps<YP>;
    YP r = O::one(*f);
    for (const auto& [v, m] : factors) {
      for (unsigned e = exponent(m); e > 0; --e) r = r * v;
    }
    return r;
  }
  YP star() const {
    return product([](unsigned) { return 1u; });
  }
  YP minus() const {
    return product([](unsigned m) { return m - 1; });
  }
  YP expand() const {
    return YOps<YP>::times(product([](unsigned m) { return m; }), lc);
  }
  bool squarefree() const {
    for (const auto& fm : factors) {
      if (fm.second > 1) return false;
    }
    return true;
  }
};

// Bronstein's quadratic Hermite reduction with per-factor data precomputed.
template <class YP>
class HermitePlan {
 public:
  using O = YOps<YP>;
  using K = typename O::K;

  explicit HermitePlan(const Factored<YP>& fac) : f_(fac.f), lc_inv_(O::kinv(*fac.f, fac.lc)) {
    star_ = fac.star();
    minus_ = fac.minus();
    const std::size_t n = fac.factors.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
      const auto& [v, m] = fac.factors[idx];
      if (m < 2) continue;
      Step s;
      s.V = v;
      s.m = m;
      s.U = O::one(*f_);
      for (std::size_t k = 0; k < n; ++k) {
        if (k == idx) continue;
        unsigned e = k < idx ? 1u : fac.factors[k].second;
        for (unsigned t = 0; t < e; ++t) s.U = s.U * fac.factors[k].first;
      }
      s.UVp = s.U * O::dy(v);
      s.inv = O::inv_mod(s.UVp, v);
      YP vj = O::one(*f_);
      s.minus_over_vj.push_back(minus_);  // j = 0, unused
      for (unsigned j = 1; j < m; ++j) {
        vj = vj * v;
        s.minus_over_vj.push_back(O::div_exact(minus_, vj));
      }
      steps_.push_back(std::move(s));
    }
  }

  const YP& star() const { return star_; }
  const YP& minus() const { return minus_; }

  // Returns (A, a): P / Q = d/dy(A / Q-) + a / Q*, deg a < deg Q*.
  std::pair<YP, YP> reduce(const YP& P) const {
    YP num = O::times(P, lc_inv_);
    YP G = O::zero(*f_);
    for (const Step& s : steps_) {
      for (unsigned j = s.m - 1; j >= 1; --j) {
        K neg_inv_j = O::kconst(*f_, f_->neg(f_->inv(j)));
        YP rhs = O::times(num, neg_inv_j);
        YP B = O::rem(rhs * s.inv, s.V);
        YP C = O::div_exact(rhs - B * s.UVp, s.V);
        G += B * s.minus_over_vj[j];
        num = O::times(C, O::kconst(*f_, f_->neg(j))) - s.U * O::dy(B);
      }
    }
    auto [q, a] = O::divrem(num, star_);
    if (!q.is_zero()) {
      std::vector<K> iq(O::size(q) + 1, O::kconst(*f_, 0));
      for (std::size_t k = 0; k < O::size(q); ++k) {
        iq[k + 1] = O::kmul(*f_, O::coeff(q, k), O::kconst(*f_, f_->inv(k + 1)));
      }
      G += O::from_coeffs(*f_, std::move(iq)) * minus_;
    }
    return {std::move(G), std::move(a)};
  }

 private:
  struct Step {
    YP V, U, UVp, inv;
    unsigned m = 0;
    std::vector<YP> minus_over_vj;
  };
  const Field* f_;
  K lc_inv_;
  YP star_, minus_;
  std::vector<Step> steps_;
};

void audit_record(bool ok);

// Clears denominators in P/(Q y^(l+1)) = d/dy(B/(Q- y^l)) + b/(Q* y^(l+1)):
// (P - lc b Q-) Q-^2 == (y (B' Q- - B Q-') - l B Q-) Q.
template <class YP>
bool check_reduction(const YP& P, const Factored<YP>& fac, u64 lambda, const YP& B, const YP& b) {
  using O = YOps<YP>;
  const Field& f = *fac.f;
  YP qm = fac.minus();
  YP Q = fac.expand();
  YP lhs = (P - O::times(b * qm, fac.lc)) * qm * qm;
  YP inner = O::y(f) * (O::dy(B) * qm - B * O::dy(qm)) - O::times(B * qm, O::kconst(f, lambda));
  YP rhs = inner * Q;
  return lhs == rhs;
}

template <class YP>
bool check_hermite(const YP& P, const Factored<YP>& fac, const YP& A, const YP& a) {
  // P/Q = d/dy(A/Q-) + a/Q*  <=>  (P - lc a Q-) Q-^2 == (A' Q- - A Q-') Q
  using O = YOps<YP>;
  YP qm = fac.minus();
  YP Q = fac.expand();
  YP lhs = (P - O::times(a * qm, fac.lc)) * qm * qm;
  YP rhs = (O::dy(A) * qm - A * O::dy(qm)) * Q;
  return lhs == rhs;
}

template <class YP>
std::pair<YP, YP> param_reduce_rec(const YP& P, const Factored<YP>& fac, u64 lambda) {
  using O = YOps<YP>;
  using K = typename O::K;
  const Field& f = *fac.f;
  if (fac.squarefree()) {
    YP star = fac.star();
    auto [q, b] = O::divrem(O::times(P, O::kinv(f, fac.lc)), star);
    // q / y^(l+1) = d/dy(sum_k q_k / (k - l) y^(k-l))
    std::vector<K> beta(O::size(q), O::kconst(f, 0));
    for (std::size_t k = 0; k < O::size(q); ++k) {
      K qk = O::coeff(q, k);
      if (O::kzero(qk)) continue;
      u64 den = f.sub(f.reduce64(k), lambda);
      if (den == 0) {
        throw Error(Error::Kind::ParameterCollision, "param_reduce",
                    "parameter collides with exponent " + std::to_string(k));
      }
      beta[k] = O::kmul(f, qk, O::kconst(f, f.inv(den)));
    }
    return {O::from_coeffs(f, std::move(beta)), std::move(b)};
  }
  // Hermite on P / (Q y); y is coprime to Q because Q(0) != 0.
  Factored<YP> fy = fac;
  fy.factors.emplace_back(O::y(f), 1u);
  HermitePlan<YP> plan(fy);
  auto [A, a] = plan.reduce(P);
  // Remaining a/(Q* y^(l+1)) + l A/(Q- y^(l+1)) over R = lcm(Q*, Q-).
  Factored<YP> rf{fac.f, O::kconst(f, 1), {}};
  for (const auto& [v, m] : fac.factors) rf.factors.emplace_back(v, m > 1 ? m - 1 : 1u);
  YP R = rf.expand();
  YP qstar = fac.star();
  YP qminus = fac.minus();
  YP PH = a * O::div_exact(R, qstar) + O::times(A * O::div_exact(R, qminus), O::kconst(f, lambda));
  auto [C, c] = param_reduce_rec(PH, rf, lambda);
  YP B = A + C * O::div_exact(qminus, rf.minus());
  return {std::move(B), std::move(c)};
}

template <class YP>
std::pair<YP, YP> param_reduce_factored(const YP& P, const Factored<YP>& fac, u64 lambda) {
  auto res = param_reduce_rec(P, fac, lambda);
  if (reduction_audit::enabled()) audit_record(check_reduction(P, fac, lambda, res.first, res.second));
  return res;
}

}  // namespace polypow::detail
