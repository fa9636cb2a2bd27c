#include "polypow/telescope.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "reduce.hpp"

namespace polypow {

// ---- audit ----

namespace {
#ifdef NDEBUG
std::atomic<bool> g_audit{false};
#else
std::atomic<bool> g_audit{true};
#endif
std::atomic<std::uint64_t> g_audit_calls{0};
std::atomic<std::uint64_t> g_audit_failures{0};
}  // namespace

namespace reduction_audit {
void set_enabled(bool on) { g_audit.store(on); }
bool enabled() { return g_audit.load(std::memory_order_relaxed); }
std::uint64_t calls() { return g_audit_calls.load(); }
std::uint64_t failures() { return g_audit_failures.load(); }
void reset() {
  g_audit_calls.store(0);
  g_audit_failures.store(0);
}
}  // namespace reduction_audit

namespace detail {
void audit_record(bool ok) {
  g_audit_calls.fetch_add(1, std::memory_order_relaxed);
  if (!ok) {
    g_audit_failures.fetch_add(1, std::memory_order_relaxed);
    throw Error(Error::Kind::Internal, "param_reduce", "reduction identity violated");
  }
}
}  // namespace detail

// ---- DiffOp ----

int DiffOp::degree_x() const {
  int d = Poly::kMinusInfinity;
  for (const auto& q : coeffs) d = std::max(d, q.degree());
  return d;
}

Poly DiffOp::apply(const Poly& u) const {
  const Field& f = field();
  Poly acc(f), der = u;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) der = der.derivative();
    if (!coeffs[i].is_zero() && !der.is_zero()) acc += coeffs[i] * der;
  }
  return acc;
}

void DiffOp::normalize() {
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  if (coeffs.empty()) throw Error(Error::Kind::Precondition, "diffop", "zero operator");
  const Field& f = coeffs.back().field();
  Poly g;
  bool first = true;
  for (const auto& q : coeffs) {
    if (q.is_zero()) continue;
    g = first ? q.monic() : poly_gcd(g, q);
    first = false;
  }
  if (g.degree() > 0) {
    for (auto& q : coeffs) {
      if (!q.is_zero()) q = poly_div_exact(q, g);
    }
  }
  u64 li = f.inv(coeffs.back().lc());
  for (auto& q : coeffs) {
    q = q.is_zero() ? Poly(f) : q.scaled(li);
  }
}

DiffOp SymbolicDiffOp::specialize(u64 n) const {
  DiffOp op;
  for (const auto& row : terms) {
    Poly q;
    u64 pw = 1;
    for (const auto& t : row) {
      if (!t.is_zero()) q += t.scaled(pw);
      pw = t.field_ptr() ? t.field().mul(pw, n) : pw;
    }
    op.coeffs.push_back(q);
  }
  const Field* f = nullptr;
  for (const auto& row : terms) {
    for (const auto& t : row) {
      if (t.field_ptr()) f = t.field_ptr();
    }
  }
  for (auto& q : op.coeffs) {
    if (!q.field_ptr()) q = Poly(*f);
  }
  op.normalize();
  return op;
}

// ---- reductions ----

namespace {

detail::Factored<YPolyL> factor_l(const YPolyL& Q) {
  YSquarefree s = y_yun(Q);
  return {&Q.field(), s.lc, s.factors};
}

detail::Factored<Poly> factor_scalar(const Poly& Q) {
  SquarefreeFactorization s = yun_squarefree(Q);
  return {&Q.field(), s.lc, s.factors};
}

}  // namespace

HermiteResult hermite_reduce(const YPolyL& P, const YPolyL& Q) {
  if (Q.is_zero()) throw Error(Error::Kind::DivisionByZero, "hermite_reduce", "zero denominator");
  auto fac = factor_l(Q);
  detail::HermitePlan<YPolyL> plan(fac);
  auto [A, a] = plan.reduce(P);
  if (reduction_audit::enabled()) detail::audit_record(detail::check_hermite(P, fac, A, a));
  return {std::move(A), std::move(a), plan.star(), plan.minus()};
}

ReductionPair param_reduce(const YPolyL& P, const YPolyL& Q, u64 lambda) {
  if (Q.is_zero() || Q[0].is_zero()) {
    throw Error(Error::Kind::Precondition, "param_reduce", "denominator must not vanish at y = 0");
  }
  auto fac = factor_l(Q);
  auto [B, b] = detail::param_reduce_factored(P, fac, Q.field().reduce64(lambda));
  return {std::move(B), std::move(b)};
}

std::pair<Poly, Poly> hermite_reduce_scalar(const Poly& P, const Poly& Q) {
  if (Q.is_zero()) throw Error(Error::Kind::DivisionByZero, "hermite_reduce", "zero denominator");
  auto fac = factor_scalar(Q);
  detail::HermitePlan<Poly> plan(fac);
  auto res = plan.reduce(P);
  if (reduction_audit::enabled()) detail::audit_record(detail::check_hermite(P, fac, res.first, res.second));
  return res;
}

std::pair<Poly, Poly> param_reduce_scalar(const Poly& P, const Poly& Q, u64 lambda) {
  if (Q.is_zero() || Q[0] == 0) {
    throw Error(Error::Kind::Precondition, "param_reduce", "denominator must not vanish at y = 0");
  }
  auto fac = factor_scalar(Q);
  return detail::param_reduce_factored(P, fac, Q.field().reduce64(lambda));
}

// ---- engine ----

namespace {

// Fraction-free determinant over F_p[x].
Poly bareiss_det(std::vector<std::vector<Poly>> m) {
  const std::size_t n = m.size();
  const Field* f = nullptr;
  for (const auto& row : m) {
    for (const auto& e : row) {
      if (e.field_ptr()) f = e.field_ptr();
    }
  }
  if (n == 0) throw Error(Error::Kind::Internal, "bareiss", "empty matrix");
  bool negate = false;
  Poly prev = Poly::constant(*f, 1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k].is_zero()) ++piv;
    if (piv == n) return Poly(*f);
    if (piv != k) {
      std::swap(m[piv], m[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = prev.is_one() ? std::move(t) : poly_div_exact(t, prev);
      }
      m[i][k] = Poly(*f);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

// Solve sum_{t<l} v_t col_t = -col_l over F_p. Returns nullopt if the first
// l columns are dependent or the system is inconsistent; `dependent` tells which.
std::optional<std::vector<u64>> solve_last(const Field& f, const std::vector<std::vector<u64>>& cols, std::size_t l,
                                           std::size_t rows, bool* rank_deficient) {
  std::vector<std::vector<u64>> a(rows, std::vector<u64>(l + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t t = 0; t < l; ++t) a[i][t] = cols[t][i];
    a[i][l] = f.neg(cols[l][i]);
  }
  std::size_t r = 0;
  std::vector<std::size_t> pivcol;
  for (std::size_t c = 0; c < l && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) {
      if (rank_deficient) *rank_deficient = true;
      return std::nullopt;
    }
    std::swap(a[p], a[r]);
    u64 inv = f.inv(a[r][c]);
    for (std::size_t j = c; j <= l; ++j) a[r][j] = f.mul(a[r][j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      u64 u = a[i][c];
      for (std::size_t j = c; j <= l; ++j) a[i][j] = f.sub(a[i][j], f.mul(u, a[r][j]));
    }
    pivcol.push_back(c);
    ++r;
  }
  if (r < l) {
    if (rank_deficient) *rank_deficient = true;
    return std::nullopt;
  }
  if (rank_deficient) *rank_deficient = false;
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i][l] != 0) return std::nullopt;
  }
  std::vector<u64> v(l + 1);
  for (std::size_t i = 0; i < l; ++i) v[i] = a[i][l];
  v[l] = 1;
  return v;
}

}  // namespace

struct TelescoperEngine::Impl {
  const Field* f;
  BiPoly num, den;
  YPolyL P, Q;
  detail::Factored<YPolyL> fac;
  YPolyL star, dx_star;
  detail::Factored<YPolyL> fac_star2;
  Poly lc_y;                    // leading y-coefficient of den
  std::vector<BiPoly> numer;    // d^i U / dx^i = numer[i] / den^(i+1)
  std::vector<std::pair<std::vector<RatFun>, unsigned>> factor_coeffs;

  const BiPoly& numerator(std::size_t i) {
    while (numer.size() <= i) {
      std::size_t k = numer.size() - 1;
      const BiPoly& nk = numer[k];
      BiPoly next = nk.dx() * den - (nk * den.dx()).times(Poly::constant(*f, k + 1));
      numer.push_back(std::move(next));
    }
    return numer[i];
  }

  // Scalar residual vectors (length dstar) of d^i U/dx^i at x = alpha, i < count.
  // U is expanded as a series in e = x - alpha, so only num and den are evaluated.
  bool residuals_at(u64 alpha, u64 lambda, std::size_t count, std::size_t dstar,
                    std::vector<std::vector<u64>>& cols) const {
    const Field& F = *f;
    u64 lc = poly_eval(lc_y, alpha);
    if (lc == 0) return false;
    std::vector<std::pair<Poly, unsigned>> vs;
    try {
      for (const auto& [cs, m] : factor_coeffs) {
        std::vector<u64> c(cs.size());
        for (std::size_t k = 0; k < cs.size(); ++k) c[k] = cs[k].eval(alpha);
        vs.emplace_back(Poly(F, std::move(c)), m);
      }
    } catch (const Error&) {
      return false;
    }
    Poly st = Poly::constant(F, 1);
    for (const auto& [v, m] : vs) st = st * v;
    if (st.degree() != static_cast<int>(dstar) || st[0] == 0) return false;
    if (dstar > 0 && !poly_gcd(st, st.derivative()).is_one()) return false;

    const std::vector<Poly> ns = series(num, alpha, count);
    const std::vector<Poly> ds = series(den, alpha, count);
    std::vector<Poly> dpow{Poly::constant(F, 1)};
    for (std::size_t i = 1; i < count; ++i) dpow.push_back(dpow.back() * ds[0]);
    // W_i = num_i den_0^i - sum_j den_j W_{i-j} den_0^(j-1), so that U_i = W_i / den_0^(i+1)
    std::vector<Poly> W;
    cols.assign(count, std::vector<u64>(dstar, 0));
    u64 lcp = 1, fact = 1;
    for (std::size_t i = 0; i < count; ++i) {
      Poly w = ns[i].is_zero() ? Poly(F) : ns[i] * dpow[i];
      for (std::size_t j = 1; j <= i; ++j) {
        if (!ds[j].is_zero() && !W[i - j].is_zero()) w -= ds[j] * W[i - j] * dpow[j - 1];
      }
      W.push_back(w);
      if (i > 0) fact = F.mul(fact, i);
      lcp = F.mul(lcp, lc);
      detail::Factored<Poly> fac_i{f, lcp, {}};
      for (const auto& [v, m] : vs) fac_i.factors.emplace_back(v, m * static_cast<unsigned>(i + 1));
      auto [B, b] = detail::param_reduce_factored(w.scaled(fact), fac_i, lambda);
      for (std::size_t k = 0; k < dstar && k < b.size(); ++k) cols[i][k] = b[k];
    }
    return true;
  }

  // Taylor coefficients in e = x - alpha, up to e^(m-1), of each y-coefficient.
  std::vector<Poly> series(const BiPoly& b, u64 alpha, std::size_t m) const {
    const Field& F = *f;
    std::vector<std::vector<u64>> out(m, std::vector<u64>(b.size(), 0));
    for (std::size_t k = 0; k < b.size(); ++k) {
      std::vector<u64> a = b[k].coeffs();
      const std::size_t n = a.size();
      for (std::size_t j = 0; j < m && j < n; ++j) {
        for (std::size_t i = n - 1; i > j; --i) a[i - 1] = F.add(a[i - 1], F.mul(alpha, a[i]));
        out[j][k] = a[j];
      }
    }
    std::vector<Poly> res;
    for (auto& v : out) res.emplace_back(F, std::move(v));
    return res;
  }
};

TelescoperEngine::TelescoperEngine(BiRat U) : U_(std::move(U)), impl_(new Impl) {
  Impl& m = *impl_;
  m.f = &U_.field();
  const Field& f = *m.f;
  if (U_.den.is_zero() || U_.den[0].is_zero()) {
    delete impl_;
    throw Error(Error::Kind::Precondition, "telescoper", "denominator must not vanish at y = 0");
  }
  m.num = U_.num.is_zero() ? BiPoly(f) : U_.num;
  m.den = U_.den;
  m.P = YPolyL(m.num);
  m.Q = YPolyL(m.den);
  m.fac = factor_l(m.Q);
  m.star = m.fac.star();
  m.dx_star = m.star.dx();
  m.fac_star2 = {m.f, RatFun::constant(f, 1), {}};
  for (const auto& [v, mult] : m.fac.factors) m.fac_star2.factors.emplace_back(v, 2u);
  m.lc_y = m.den.lc();
  m.numer.push_back(m.num);
  for (const auto& [v, mult] : m.fac.factors) m.factor_coeffs.emplace_back(v.coeffs(), mult);
  dstar_ = m.star.degree() < 0 ? 0 : static_cast<std::size_t>(m.star.degree());
}

TelescoperEngine::~TelescoperEngine() { delete impl_; }

std::vector<YPolyL> TelescoperEngine::exact_residuals(u64 lambda, std::size_t count, bool incremental) const {
  Impl& m = *impl_;
  const Field& f = *m.f;
  lambda = f.reduce64(lambda);
  std::vector<YPolyL> out;
  if (count == 0) return out;
  out.push_back(detail::param_reduce_factored(m.P, m.fac, lambda).second);
  for (std::size_t i = 1; i < count; ++i) {
    if (incremental) {
      const YPolyL& b = out.back();
      YPolyL next = b.dx() * m.star - b * m.dx_star;
      out.push_back(detail::param_reduce_factored(next, m.fac_star2, lambda).second);
    } else {
      YPolyL Pi(m.numerator(i));
      detail::Factored<YPolyL> fi = m.fac;
      RatFun lcp = RatFun::constant(f, 1);
      for (std::size_t k = 0; k <= i; ++k) lcp = lcp * m.fac.lc;
      fi.lc = lcp;
      for (auto& fm : fi.factors) fm.second *= static_cast<unsigned>(i + 1);
      out.push_back(detail::param_reduce_factored(Pi, fi, lambda).second);
    }
  }
  return out;
}

DiffOp TelescoperEngine::at(u64 lambda, TelescoperRoute route) const {
  lambda = impl_->f->reduce64(lambda);
  return route == TelescoperRoute::Exact ? at_exact(lambda) : at_evaluation(lambda);
}

DiffOp TelescoperEngine::at_exact(u64 lambda) const {
  Impl& m = *impl_;
  const Field& f = *m.f;
  const std::size_t rows = dstar_;
  SplitMix64 rng(0x5eed0000ULL ^ lambda);
  std::vector<YPolyL> res;
  std::vector<std::vector<Poly>> cols;  // denominator-free columns
  std::vector<Poly> scales;
  for (std::size_t j = 0; j <= dstar_; ++j) {
    if (j == 0) {
      res.push_back(detail::param_reduce_factored(m.P, m.fac, lambda).second);
    } else {
      const YPolyL& b = res.back();
      YPolyL next = b.dx() * m.star - b * m.dx_star;
      res.push_back(detail::param_reduce_factored(next, m.fac_star2, lambda).second);
    }
    auto [bp, scale] = res.back().clear_denominators();
    std::vector<Poly> col(rows);
    for (std::size_t i = 0; i < rows; ++i) col[i] = bp[i].field_ptr() ? bp[i] : Poly(f);
    cols.push_back(std::move(col));
    scales.push_back(scale);
    if (rows == 0 || std::all_of(cols.back().begin(), cols.back().end(), [](const Poly& p) { return p.is_zero(); })) {
      if (j == 0) {
        DiffOp op{{Poly::constant(f, 1)}};
        return op;
      }
    }
    // Pick j rows where the first j columns are independent at a random point.
    std::vector<std::size_t> pick;
    for (int attempt = 0; attempt < 8 && pick.size() != j; ++attempt) {
      u64 alpha = rng.below(f.modulus());
      std::vector<std::vector<u64>> a(rows, std::vector<u64>(j));
      for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t t = 0; t < j; ++t) a[i][t] = poly_eval(cols[t][i], alpha);
      }
      pick.clear();
      std::vector<std::vector<u64>> basis;  // echelon rows seen so far
      std::vector<std::size_t> lead;
      for (std::size_t i = 0; i < rows && pick.size() < j; ++i) {
        std::vector<u64> v = a[i];
        for (std::size_t b = 0; b < basis.size(); ++b) {
          u64 c = v[lead[b]];
          if (c == 0) continue;
          for (std::size_t t = 0; t < j; ++t) v[t] = f.sub(v[t], f.mul(c, basis[b][t]));
        }
        std::size_t ld = 0;
        while (ld < j && v[ld] == 0) ++ld;
        if (ld == j) continue;
        u64 inv = f.inv(v[ld]);
        for (auto& x : v) x = f.mul(x, inv);
        for (std::size_t b = 0; b < basis.size(); ++b) {
          u64 c = basis[b][ld];
          if (c == 0) continue;
          for (std::size_t t = 0; t < j; ++t) basis[b][t] = f.sub(basis[b][t], f.mul(c, v[t]));
        }
        basis.push_back(v);
        lead.push_back(ld);
        pick.push_back(i);
      }
    }
    if (pick.size() != j) continue;  // first j columns look dependent; keep growing
    // Cramer: v_t = (-1)^(j-t) det(minor without column t), which makes
    // sum_t v_t col_t vanish on the picked rows.
    std::vector<Poly> v(j + 1);
    for (std::size_t t = 0; t <= j; ++t) {
      if (j == 0) {
        v[t] = Poly::constant(f, 1);
        break;
      }
      std::vector<std::vector<Poly>> minor(j, std::vector<Poly>());
      for (std::size_t r = 0; r < j; ++r) {
        for (std::size_t c = 0; c <= j; ++c) {
          if (c != t) minor[r].push_back(cols[c][pick[r]]);
        }
      }
      Poly d = bareiss_det(std::move(minor));
      v[t] = ((j - t) & 1) ? -d : d;
    }
    if (v[j].is_zero()) continue;
    // Check every row, not only the picked ones.
    bool ok = true;
    for (std::size_t i = 0; i < rows && ok; ++i) {
      Poly s(f);
      for (std::size_t t = 0; t <= j; ++t) {
        if (!v[t].is_zero() && !cols[t][i].is_zero()) s += v[t] * cols[t][i];
      }
      ok = s.is_zero();
    }
    if (!ok) continue;
    DiffOp op;
    for (std::size_t t = 0; t <= j; ++t) op.coeffs.push_back(v[t] * scales[t]);
    op.normalize();
    return op;
  }
  throw Error(Error::Kind::NotFound, "telescoper", "telescoper not found up to order d*");
}

DiffOp TelescoperEngine::at_evaluation(u64 lambda) const {
  Impl& m = *impl_;
  const Field& f = *m.f;
  const std::size_t rows = dstar_;
  if (rows == 0) return DiffOp{{Poly::constant(f, 1)}};
  SplitMix64 rng(0xa11a0000ULL ^ (lambda * 0x9e3779b97f4a7c15ULL));
  auto draw = [&]() { return rng.below(f.modulus()); };

  // Order: first residual that lies in the span of its predecessors.
  std::size_t order = 0;
  bool found = false;
  for (int attempt = 0; attempt < 8 && !found; ++attempt) {
    std::vector<std::vector<u64>> cols;
    u64 alpha = draw();
    if (!m.residuals_at(alpha, lambda, rows + 1, rows, cols)) continue;
    for (std::size_t j = 0; j <= rows; ++j) {
      bool deficient = false;
      auto v = solve_last(f, cols, j, rows, &deficient);
      if (deficient) break;  // unlucky point
      if (v) {
        order = j;
        found = true;
        break;
      }
    }
  }
  if (!found) throw Error(Error::Kind::NotFound, "telescoper", "telescoper not found up to order d*");
  if (order == 0) return DiffOp{{Poly::constant(f, 1)}};

  // Ratios rho_t = q_t / q_order as functions of x, rebuilt from samples.
  std::vector<u64> xs;
  std::vector<std::vector<u64>> vals(order);
  auto sample = [&](u64 alpha, std::vector<u64>& out) -> bool {
    std::vector<std::vector<u64>> cols;
    if (!m.residuals_at(alpha, lambda, order + 1, rows, cols)) return false;
    bool deficient = false;
    auto v = solve_last(f, cols, order, rows, &deficient);
    if (!v) {
      if (deficient) return false;
      throw Error(Error::Kind::Internal, "telescoper", "residual relation inconsistent at sample point");
    }
    out = std::move(*v);
    return true;
  };
  auto add_point = [&]() {
    for (int tries = 0; tries < 64; ++tries) {
      u64 alpha = draw();
      if (std::find(xs.begin(), xs.end(), alpha) != xs.end()) continue;
      std::vector<u64> v;
      if (!sample(alpha, v)) continue;
      xs.push_back(alpha);
      for (std::size_t t = 0; t < order; ++t) vals[t].push_back(v[t]);
      return;
    }
    throw Error(Error::Kind::Internal, "telescoper", "no usable sample points");
  };

  // A random combination of the rho_t fixes the common denominator; the
  // numerators q_t = rho_t * den are then plain interpolation problems.
  std::vector<u64> mix(order);
  for (auto& c : mix) c = draw();
  auto combine = [&](const std::vector<u64>& v) {
    u64 g = 0;
    for (std::size_t t = 0; t < order; ++t) g = f.add(g, f.mul(mix[t], v[t]));
    return g;
  };
  auto fresh_ok = [&](const std::vector<Poly>& q) {
    for (int extra = 0; extra < 2;) {
      u64 alpha = draw();
      std::vector<u64> v;
      if (!sample(alpha, v)) continue;
      ++extra;
      u64 dq = poly_eval(q[order], alpha);
      for (std::size_t t = 0; t < order; ++t) {
        if (poly_eval(q[t], alpha) != f.mul(v[t], dq)) return false;
      }
    }
    return true;
  };
  for (std::size_t k = 8; k <= (std::size_t{1} << 15); k = k * 3 / 2) {
    const std::size_t need = 2 * k + 1;
    while (xs.size() < need) add_point();
    std::vector<u64> px(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(need));
    std::vector<u64> gy(need);
    for (std::size_t i = 0; i < need; ++i) {
      std::vector<u64> v(order);
      for (std::size_t t = 0; t < order; ++t) v[t] = vals[t][i];
      gy[i] = combine(v);
    }
    RatFun g(f);
    try {
      g = ratfun_reconstruct(f, px, gy, static_cast<int>(k), static_cast<int>(k));
    } catch (const Error& e) {
      if (e.kind() != Error::Kind::NotFound) throw;
      continue;
    }
    const Poly& den = g.den();
    std::vector<std::vector<u64>> qy(order, std::vector<u64>(need));
    for (std::size_t i = 0; i < need; ++i) {
      u64 dv = poly_eval(den, px[i]);
      for (std::size_t t = 0; t < order; ++t) qy[t][i] = f.mul(vals[t][i], dv);
    }
    std::vector<Poly> q = poly_interp_many(f, px, qy);
    q.push_back(den);
    if (!fresh_ok(q)) continue;
    DiffOp op{std::move(q)};
    op.normalize();
    return op;
  }
  throw Error(Error::Kind::NotFound, "telescoper", "coefficient degree exceeds reconstruction limit");
}

DiffOp telescoper_at(const BiRat& U, u64 lambda, TelescoperRoute route) {
  TelescoperEngine e(U);
  return e.at(lambda, route);
}

SymbolicDiffOp telescoper_symbolic(const BiRat& U, int n_deg_hint) {
  TelescoperEngine e(U);
  return telescoper_symbolic(e, n_deg_hint);
}

SymbolicDiffOp telescoper_symbolic(const TelescoperEngine& engine, int n_deg_hint) {
  const Field& f = engine.function().field();
  SplitMix64 rng(0x5171b011cULL);
  const u64 margin = u64{1} << 24;
  auto draw_nu = [&]() { return margin + rng.below(f.modulus() - 2 * margin); };

  struct Sample {
    u64 nu;
    DiffOp op;
  };
  std::vector<Sample> samples;
  auto key = [](const DiffOp& op) {
    std::vector<int> k;
    for (const auto& q : op.coeffs) k.push_back(q.degree());
    return k;
  };
  int hint = std::max(n_deg_hint, 0);
  for (int round = 0; round <= 3; ++round, hint = 2 * hint + 1) {
    const std::size_t bound = static_cast<std::size_t>(hint) + 1;
    const std::size_t need = 2 * bound + 1 + 2;  // two extra for verification
    while (samples.size() < need) {
      u64 nu = draw_nu();
      samples.push_back({nu, engine.at(nu)});
    }
    // Most common structure wins; other samples are special values of n.
    std::map<std::vector<int>, std::size_t> freq;
    for (const auto& s : samples) ++freq[key(s.op)];
    auto best = std::max_element(freq.begin(), freq.end(),
                                 [](const auto& a, const auto& b) { return a.second < b.second; });
    std::vector<const Sample*> use;
    for (const auto& s : samples) {
      if (key(s.op) == best->first) use.push_back(&s);
    }
    if (use.size() < need) continue;
    const std::vector<int>& shape = best->first;
    std::vector<u64> nus;
    for (const auto* s : use) nus.push_back(s->nu);
    // Reconstruct each x-coefficient of each q_i as a rational function of n.
    std::vector<std::vector<RatFun>> coef(shape.size());
    bool ok = true;
    for (std::size_t i = 0; i < shape.size() && ok; ++i) {
      for (int k = 0; k <= shape[i] && ok; ++k) {
        std::vector<u64> ys;
        for (const auto* s : use) ys.push_back(s->op.coeffs[i][static_cast<std::size_t>(k)]);
        try {
          coef[i].push_back(ratfun_reconstruct(f, nus, ys, static_cast<int>(bound), static_cast<int>(bound)));
        } catch (const Error& e) {
          if (e.kind() != Error::Kind::NotFound) throw;
          ok = false;
        }
      }
    }
    if (!ok) continue;
    Poly den = Poly::constant(f, 1);
    for (const auto& row : coef) {
      for (const auto& c : row) den = den * poly_div_exact(c.den(), poly_gcd(den, c.den()));
    }
    // polys[i][k] is a polynomial in n
    std::vector<std::vector<Poly>> polys(shape.size());
    Poly g;
    bool first = true;
    for (std::size_t i = 0; i < coef.size(); ++i) {
      for (const auto& c : coef[i]) {
        Poly p = c.is_zero() ? Poly(f) : c.num() * poly_div_exact(den, c.den());
        if (!p.is_zero()) {
          g = first ? p.monic() : poly_gcd(g, p);
          first = false;
        }
        polys[i].push_back(std::move(p));
      }
    }
    SymbolicDiffOp out;
    out.order = shape.size() - 1;
    out.deg_n = 0;
    out.deg_x = 0;
    for (std::size_t i = 0; i < polys.size(); ++i) {
      int dn = 0;
      for (auto& p : polys[i]) {
        if (!p.is_zero() && g.degree() > 0) p = poly_div_exact(p, g);
        dn = std::max(dn, p.degree());
      }
      out.deg_n = std::max(out.deg_n, dn);
      std::vector<Poly> row(static_cast<std::size_t>(dn) + 1, Poly(f));
      for (std::size_t k = 0; k < polys[i].size(); ++k) {
        for (std::size_t j = 0; j < polys[i][k].size(); ++j) {
          std::vector<u64> c = row[j].coeffs();
          if (c.size() <= k) c.resize(k + 1, 0);
          c[k] = polys[i][k][j];
          row[j] = Poly(f, std::move(c));
        }
      }
      for (const auto& t : row) out.deg_x = std::max(out.deg_x, t.degree());
      out.terms.push_back(std::move(row));
    }
    return out;
  }
  throw Error(Error::Kind::NotFound, "telescoper_symbolic", "reconstruction in n failed after 3 doublings");
}

}  // namespace polypow
