#include "audited_main.hpp"
#include "testutil.hpp"

using namespace polypow;
using testutil::random_poly;

namespace {

DiffOp fib_operator(const Field& f, u64 N) {
  // (x^2 + 4) D^2 + 3x D + (1 - N^2)
  u64 c0 = f.sub(1, f.mul(N % f.modulus(), N % f.modulus()));
  return DiffOp{{Poly(f, {c0}), Poly::from_ints(f, {0, 3}), Poly::from_ints(f, {4, 0, 1})}};
}

BiRat fib_u(const Field& f) { return genfunc(fibonacci_spec(f)); }

}  // namespace

TEST_CASE("scalar Hermite reduction satisfies its identity pointwise") {
  const Field& f = Field::default_field();
  SplitMix64 g(31);
  for (int t = 0; t < 200; ++t) {
    Poly a = random_poly(f, g, 2), b = random_poly(f, g, 1 + t % 3);
    Poly Q = a * a * b;
    Poly P = random_poly(f, g, Q.degree() - 1);
    auto [A, r] = hermite_reduce_scalar(P, Q);
    auto [qs, qm] = testutil::star_minus(Q);
    u64 y = g.below(f.modulus());
    // P/Q = (A' qm - A qm') / qm^2 + r / qs
    u64 lhs = f.div(P.eval(y), Q.eval(y));
    u64 m = qm.eval(y);
    u64 dA = f.sub(f.mul(A.derivative().eval(y), m), f.mul(A.eval(y), qm.derivative().eval(y)));
    u64 rhs = f.add(f.div(dA, f.mul(m, m)), f.div(r.eval(y), qs.eval(y)));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("scalar parametrized reduction satisfies its identity pointwise") {
  const Field& f = Field::default_field();
  SplitMix64 g(32);
  for (int t = 0; t < 300; ++t) {
    Poly a = random_poly(f, g, 1 + t % 2), b = random_poly(f, g, t % 3);
    Poly Q = a * a * b;
    if (Q[0] == 0) continue;
    Poly P = random_poly(f, g, 3 + t % 6);
    u64 lambda = 1000 + g.below(1u << 20);
    auto [B, r] = param_reduce_scalar(P, Q, lambda);
    auto [qs, qm] = testutil::star_minus(Q);
    CHECK(r.degree() < qs.degree());
    CHECK(testutil::reduction_holds_at(P, Q, lambda, B, r, 1 + g.below(f.modulus() - 1)));
  }
}

TEST_CASE("parametrized reduction over F_p(x)") {
  const Field& f = Field::default_field();
  SplitMix64 g(33);
  std::uint64_t before = reduction_audit::calls();
  for (int t = 0; t < 20; ++t) {
    YPolyL a(testutil::random_bipoly(f, g, 1, 1));
    YPolyL b(testutil::random_bipoly(f, g, 1, 1));
    YPolyL Q = a * a * b;
    YPolyL P(testutil::random_bipoly(f, g, 3, 1));
    ReductionPair rp = param_reduce(P, Q, 4242 + t);
    CHECK(rp.b.degree() < 2);
    HermiteResult h = hermite_reduce(P, Q);
    CHECK(h.Qminus == a.monic());
  }
  CHECK(reduction_audit::calls() >= before + 40);
  CHECK(reduction_audit::failures() == 0);
}

TEST_CASE("parametrized reduction preconditions") {
  const Field& f = Field::default_field();
  Poly one = Poly::constant(f, 1);
  // y^3 / y^(l+1) at l = 3 is the logarithmic term.
  CHECK_THROWS_AS(param_reduce_scalar(Poly::monomial(f, 1, 3), one, 3), Error);
  try {
    param_reduce_scalar(Poly::monomial(f, 1, 3), one, 3);
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::ParameterCollision);
  }
  try {
    param_reduce_scalar(one, Poly::x(f), 5);
  } catch (const Error& e) {
    CHECK(e.kind() == Error::Kind::Precondition);
  }
  // P = 1, Q = 1: pure power, B = 1 / (0 - l), b = 0
  auto [B, b] = param_reduce_scalar(one, one, 7);
  CHECK(B == Poly::constant(f, f.inv(f.from_int(-7))));
  CHECK(b.is_zero());
}

TEST_CASE("Fibonacci telescoper on both routes") {
  const Field& f = Field::default_field();
  for (u64 N : {5ULL, 10ULL, 123ULL}) {
    CHECK(telescoper_at(fib_u(f), N, TelescoperRoute::Evaluation) == fib_operator(f, N));
    CHECK(telescoper_at(fib_u(f), N, TelescoperRoute::Exact) == fib_operator(f, N));
  }
}

TEST_CASE("symbolic Fibonacci telescoper") {
  const Field& f = Field::default_field();
  SymbolicDiffOp L = telescoper_symbolic(fib_u(f), 1);
  CHECK(L.order == 2);
  CHECK(L.deg_n == 2);
  CHECK(L.deg_x == 2);
  for (u64 n : {3ULL, 17ULL, 1000ULL}) CHECK(L.specialize(n) == fib_operator(f, n));
}

TEST_CASE("telescoper of a pure pole") {
  const Field& f = Field::default_field();
  // 1 / (1 - x y)^2 has u_n = (n + 1) x^n, annihilated by x D - n.
  BiPoly d(f, {Poly::constant(f, 1), Poly::from_ints(f, {0, -1})});
  DiffOp L = telescoper_at(BiRat(BiPoly::constant(f, 1), d * d), 7);
  CHECK(L == DiffOp{{Poly::constant(f, f.from_int(-7)), Poly::x(f)}});
}

TEST_CASE("telescopers annihilate the N-th term") {
  const Field& f = Field::default_field();
  for (u64 seed = 1; seed <= 6; ++seed) {
    CFiniteSpec spec = random_spec(f, 2 + seed % 2, 1, seed);
    TelescoperEngine engine(genfunc(spec));
    for (u64 N : {25ULL, 64ULL}) {
      DiffOp ev = engine.at(N, TelescoperRoute::Evaluation);
      DiffOp ex = engine.at(N, TelescoperRoute::Exact);
      CHECK(ev == ex);
      CHECK(testutil::apply_op(ev, seq_iterate(spec, N)).is_zero());
      CHECK(ev.coeffs.back().lc() == 1);
    }
  }
}

TEST_CASE("incremental and direct residuals agree") {
  const Field& f = Field::default_field();
  TelescoperEngine e1(genfunc(random_spec(f, 2, 1, 77)));
  auto inc = e1.exact_residuals(40, 3, true);
  auto dir = e1.exact_residuals(40, 3, false);
  CHECK(inc == dir);
  TelescoperEngine e2(fib_u(f));
  CHECK(e2.exact_residuals(9, 3, true) == e2.exact_residuals(9, 3, false));
}

TEST_CASE("operator helpers") {
  const Field& f = Field::default_field();
  DiffOp L = fib_operator(f, 4);
  CHECK(L.order() == 2);
  CHECK(L.degree_x() == 2);
  // F_4 = x^3 + 2x
  CHECK(L.apply(Poly::from_ints(f, {0, 2, 0, 1})).is_zero());
  DiffOp scaled{{L.coeffs[0].scaled(5), L.coeffs[1].scaled(5), L.coeffs[2].scaled(5)}};
  scaled.normalize();
  CHECK(scaled == L);
}
