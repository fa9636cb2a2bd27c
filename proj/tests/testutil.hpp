#pragma once

#include <vector>

#include "polypow/instance.hpp"
#include "polypow/power.hpp"

namespace testutil {

using namespace polypow;

inline Poly random_poly(const Field& f, SplitMix64& g, int deg) {
  std::vector<u64> c(deg + 1);
  for (auto& v : c) v = g.below(f.modulus());
  return Poly(f, std::move(c));
}

inline BiPoly random_bipoly(const Field& f, SplitMix64& g, int deg_y, int deg_x) {
  std::vector<Poly> c;
  for (int i = 0; i <= deg_y; ++i) c.push_back(random_poly(f, g, deg_x));
  return BiPoly(f, std::move(c));
}

// Determinant over F_p by Gaussian elimination.
inline u64 det_scalar(const Field& f, std::vector<std::vector<u64>> a) {
  const std::size_t n = a.size();
  u64 det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = f.neg(det);
    }
    det = f.mul(det, a[c][c]);
    u64 inv = f.inv(a[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      u64 m = f.mul(a[r][c], inv);
      for (std::size_t k = c; k < n; ++k) a[r][k] = f.sub(a[r][k], f.mul(m, a[c][k]));
    }
  }
  return det;
}

// Value of an n x n polynomial matrix at x = a.
inline std::vector<std::vector<u64>> eval_matrix(const PolyMatrix& M, u64 a) {
  const std::size_t r = M.rows();
  std::vector<std::vector<u64>> out(r, std::vector<u64>(r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) out[i][j] = M.at(i, j).eval(a);
  }
  return out;
}

// Monic squarefree part and repeated part, by gcd with the derivative.
inline std::pair<Poly, Poly> star_minus(const Poly& Q) {
  Poly g = poly_gcd(Q, Q.derivative());
  Poly star = poly_div_exact(Q, g).monic();
  return {star, g.monic()};
}

// Checks P/(Q y^(l+1)) = d/dy(B/(Q- y^l)) + b/(Q* y^(l+1)) at y = t.
inline bool reduction_holds_at(const Poly& P, const Poly& Q, u64 l, const Poly& B, const Poly& b, u64 t) {
  const Field& f = Q.field();
  auto [qs, qm] = star_minus(Q);
  u64 yl = f.pow(t, l);
  u64 yl1 = f.mul(yl, t);
  u64 lhs = f.div(P.eval(t), f.mul(Q.eval(t), yl1));
  u64 Bv = B.eval(t), dB = B.derivative().eval(t);
  u64 m = qm.eval(t), dm = qm.derivative().eval(t);
  // (B' m y - B m' y - l B m) / (m^2 y^(l+1))
  u64 num = f.sub(f.sub(f.mul(f.mul(dB, m), t), f.mul(f.mul(Bv, dm), t)), f.mul(f.mul(f.reduce64(l), Bv), m));
  u64 rhs = f.add(f.div(num, f.mul(f.mul(m, m), yl1)), f.div(b.eval(t), f.mul(qs.eval(t), yl1)));
  return lhs == rhs;
}

// sum_i q_i(x) u^(i)(x)
inline Poly apply_op(const DiffOp& L, const Poly& u) {
  Poly acc(u.field()), d = u;
  for (const auto& q : L.coeffs) {
    acc += q * d;
    d = d.derivative();
  }
  return acc;
}

}  // namespace testutil
