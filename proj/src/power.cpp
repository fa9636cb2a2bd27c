#include "polypow/power.hpp"

#include <chrono>

namespace polypow {

void PowerTrace::absorb(const SeqTermTrace& t) {
  ct_ns += t.ct_ns;
  it_ns += t.it_ns;
  ur_ns += t.ur_ns;
  for (const auto& e : t.events) events.push_back("seqterm: " + e);
}

namespace {

void note(PowerTrace* trace, std::string what, bool fallback) {
  if (!trace) return;
  trace->events.push_back(std::move(what));
  if (fallback) trace->fell_back = true;
}

void require_monic(const BiPoly& P, const char* stage) {
  if (P.is_zero() || !P.is_monic_y()) throw Error(Error::Kind::Precondition, stage, "modulus must be monic in y");
}

}  // namespace

CFiniteSpec entry_sequence_spec(const PolyMatrix& M, std::size_t i, std::size_t j) {
  const Field& f = M.field();
  const std::size_t r = M.rows();
  BiPoly chi = charpoly(M);
  std::vector<Poly> c(r), init(r);
  for (std::size_t k = 0; k < r; ++k) c[k] = -chi[k];
  PolyMatrix pw = PolyMatrix::identity(f, r);
  for (std::size_t k = 0; k < r; ++k) {
    init[k] = pw.at(i, j);
    pw = pw * M;
  }
  return CFiniteSpec(f, std::move(c), std::move(init));
}

PolyMatrix binpow_matrix(const PolyMatrix& M, u64 N) {
  PolyMatrix acc = PolyMatrix::identity(M.field(), M.rows());
  bool started = false;
  for (int bit = 63; bit >= 0; --bit) {
    if (started) acc = acc * acc;
    if ((N >> bit) & 1) {
      acc = started ? acc * M : M;
      started = true;
    }
  }
  return acc;
}

BiPoly modpow_baseline(const BiPoly& P, const BiPoly& Q, u64 N) {
  require_monic(P, "modpow_baseline");
  const Field& f = P.field();
  BiPoly base = ypoly_rem(Q.is_zero() ? BiPoly(f) : Q, P);
  BiPoly acc = ypoly_rem(BiPoly::constant(f, 1), P);
  bool started = false;
  for (int bit = 63; bit >= 0; --bit) {
    if (started) acc = ypoly_rem(acc * acc, P);
    if ((N >> bit) & 1) {
      acc = ypoly_rem(acc * base, P);
      started = true;
    }
  }
  return acc;
}

BiPoly y_pow_mod(const BiPoly& P, u64 N, PowerTrace* trace) {
  require_monic(P, "y_pow_mod");
  const Field& f = P.field();
  const std::size_t r = static_cast<std::size_t>(P.degree_y());
  if (r == 0) return BiPoly(f);  // everything is 0 mod 1
  if (N < r) return BiPoly::y_power(f, N);
  if (P[0].is_zero()) throw Error(Error::Kind::Precondition, "y_pow_mod", "constant term vanishes");
  // 1 / Pbar = sum u_k y^k with Pbar = 1 + P_{r-1} y + ... + P_0 y^r
  std::vector<Poly> c(r), init(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = -P[i];
  for (std::size_t k = 0; k < r; ++k) {
    Poly u = k == 0 ? Poly::constant(f, 1) : Poly(f);
    for (std::size_t j = 1; j <= k; ++j) u -= P[r - j] * init[k - j];
    init[k] = std::move(u);
  }
  SeqTermSolver solver(CFiniteSpec(f, c, init));
  std::vector<Poly> tail(r);
  for (std::size_t i = 0; i < r; ++i) {
    SeqTermTrace st;
    tail[i] = solver.term(N - (r - 1) + i, &st);
    if (trace) trace->absorb(st);
  }
  // v = (u_{N-r+1} + ... + u_N y^(r-1)) Pbar mod y^r, answer y^(r-1) v(1/y)
  BiPoly pbar = P.reverse_y(r);
  BiPoly v = (BiPoly(f, std::move(tail)) * pbar).truncated_y(r);
  return v.reverse_y(r - 1);
}

BiPoly bivmodpow(const BiPoly& P, const BiPoly& Q, u64 N, PowerTrace* trace) {
  require_monic(P, "bivmodpow");
  const Field& f = P.field();
  const std::size_t r = static_cast<std::size_t>(P.degree_y());
  BiPoly q = ypoly_rem(Q.is_zero() ? BiPoly(f) : Q, P);
  if (r == 0) return BiPoly(f);
  if (N == 0) return BiPoly::constant(f, 1);
  if (q.degree_y() <= 0) {
    return q.is_zero() ? BiPoly(f) : BiPoly::from_poly(poly_pow(q[0], N));
  }
  if (q == BiPoly::y_power(f, 1)) {
    if (P[0].is_zero()) {
      note(trace, "P(x,0) = 0: binary powering", true);
      return modpow_baseline(P, q, N);
    }
    return y_pow_mod(P, N, trace);
  }
  // Q^N mod P = B(Q) mod P with B = t^N mod Res_y(P, t - Q)
  BiPoly A = resultant_y(P, q);
  if (A[0].is_zero()) {
    note(trace, "Res_y(P, Q) = 0: binary powering", true);
    return modpow_baseline(P, q, N);
  }
  BiPoly B = y_pow_mod(A, N, trace);
  if (B.is_zero()) return B;
  BiPoly acc = BiPoly::from_poly(B.lc());
  for (std::size_t j = B.size() - 1; j-- > 0;) {
    acc = acc * q;
    if (!B[j].is_zero()) acc += BiPoly::from_poly(B[j]);
    acc = ypoly_rem(acc, P);
  }
  return acc;
}

PolyMatrix polmatpow(const PolyMatrix& M, u64 N, PowerTrace* trace) {
  const Field& f = M.field();
  const std::size_t r = M.rows();
  if (N == 0) return PolyMatrix::identity(f, r);
  if (M.degree() <= 0) {
    note(trace, "constant matrix: binary powering", false);
    return binpow_matrix(M, N);
  }
  BiPoly chi = charpoly(M);
  if (chi[0].is_zero()) {
    note(trace, "det M = 0: binary powering", true);
    return binpow_matrix(M, N);
  }
  BiPoly R = y_pow_mod(chi, N, trace);
  return eval_at_matrix(R, M);
}

}  // namespace polypow
