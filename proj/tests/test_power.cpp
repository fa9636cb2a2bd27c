#include "audited_main.hpp"
#include "testutil.hpp"

using namespace polypow;

namespace {

PolyMatrix fib_matrix(const Field& f) {
  // C(x) = [[0, 1], [1, x]]
  return PolyMatrix(f, 2, {Poly(f), Poly::constant(f, 1), Poly::constant(f, 1), Poly::x(f)});
}

PolyMatrix naive_pow(const PolyMatrix& M, u64 N) {
  PolyMatrix acc = PolyMatrix::identity(M.field(), M.rows());
  for (u64 i = 0; i < N; ++i) acc = acc * M;
  return acc;
}

}  // namespace

TEST_CASE("binary powering baselines against repeated multiplication") {
  const Field& f = Field::default_field();
  PolyMatrix M = random_matrix(f, 3, 2, 7);
  for (u64 N : {0ULL, 1ULL, 2ULL, 13ULL}) CHECK(binpow_matrix(M, N) == naive_pow(M, N));
  BiPoly P(f, {Poly::from_ints(f, {-1}), Poly::from_ints(f, {0, -1}), Poly::constant(f, 1)});
  BiPoly Q = BiPoly::y_power(f, 2);
  BiPoly acc = BiPoly::constant(f, 1);
  for (int i = 0; i < 9; ++i) acc = ypoly_rem(acc * Q, P);
  CHECK(modpow_baseline(P, Q, 9) == acc);
}

TEST_CASE("Fibonacci matrix power") {
  const Field& f = Field::default_field();
  PowerTrace tr;
  PolyMatrix R = polmatpow(fib_matrix(f), 5, &tr);
  CHECK(R.at(0, 1) == Poly::from_ints(f, {1, 0, 3, 0, 1}));
  CHECK(R == binpow_matrix(fib_matrix(f), 5));
  CHECK_FALSE(tr.fell_back);
  CHECK(polmatpow(fib_matrix(f), 0) == PolyMatrix::identity(f, 2));
}

TEST_CASE("identity and constant matrices") {
  const Field& f = Field::default_field();
  CHECK(polmatpow(PolyMatrix::identity(f, 3), 1000000) == PolyMatrix::identity(f, 3));
  PolyMatrix C(f, 2, {Poly::constant(f, 1), Poly::constant(f, 1), Poly(f), Poly::constant(f, 1)});
  PolyMatrix R = polmatpow(C, 1000);
  CHECK(R.at(0, 1) == Poly::constant(f, 1000));
}

TEST_CASE("random matrices against binary powering") {
  const Field& f = Field::default_field();
  for (std::size_t r = 2; r <= 4; ++r) {
    for (std::size_t d = 1; d <= 3; ++d) {
      PolyMatrix M = random_matrix(f, r, d, 1000 + 10 * r + d);
      for (u64 N : {1ULL, 2ULL, 16ULL, 257ULL}) CHECK(polmatpow(M, N) == binpow_matrix(M, N));
    }
  }
  PolyMatrix M = random_matrix(f, 3, 2, 42);
  CHECK(polmatpow(M, 512) == binpow_matrix(M, 512));
}

TEST_CASE("multiplicativity and degree bound") {
  const Field& f = Field::default_field();
  PolyMatrix M = random_matrix(f, 2, 3, 9);
  for (auto [a, b] : {std::pair<u64, u64>{3, 4}, {10, 31}, {0, 7}}) {
    CHECK(polmatpow(M, a + b) == polmatpow(M, a) * polmatpow(M, b));
  }
  CHECK(polmatpow(M, 300).degree() <= 300 * 3);
}

TEST_CASE("singular matrix falls back to binary powering") {
  const Field& f = Field::default_field();
  Poly x = Poly::x(f);
  PolyMatrix M(f, 2, {x, x * x, Poly::constant(f, 1), x});  // det = 0
  PowerTrace tr;
  CHECK(polmatpow(M, 40, &tr) == binpow_matrix(M, 40));
  CHECK(tr.fell_back);
  CHECK_FALSE(tr.events.empty());
}

TEST_CASE("entry sequences") {
  const Field& f = Field::default_field();
  PolyMatrix M = random_matrix(f, 3, 1, 4);
  CFiniteSpec s = entry_sequence_spec(M, 0, 2);
  for (u64 N : {0ULL, 3ULL, 20ULL}) CHECK(seq_iterate(s, N) == binpow_matrix(M, N).at(0, 2));
}

TEST_CASE("powers of y modulo P") {
  const Field& f = Field::default_field();
  BiPoly P(f, {Poly::from_ints(f, {-1}), Poly::from_ints(f, {0, -1}), Poly::constant(f, 1)});
  for (u64 N : {0ULL, 1ULL, 2ULL, 5ULL, 100ULL}) CHECK(y_pow_mod(P, N) == modpow_baseline(P, BiPoly::y_power(f, 1), N));
  BiPoly nonmonic(f, {Poly::constant(f, 1), Poly::from_ints(f, {0, 1})});
  CHECK_THROWS_AS(y_pow_mod(nonmonic, 4), Error);
}

TEST_CASE("bivariate modular powers") {
  const Field& f = Field::default_field();
  BiPoly P(f, {Poly::from_ints(f, {-1}), Poly::from_ints(f, {0, -1}), Poly::constant(f, 1)});
  CHECK(bivmodpow(P, BiPoly::y_power(f, 2), 8) == modpow_baseline(P, BiPoly::y_power(f, 2), 8));
  BiPoly q = BiPoly::from_poly(Poly::from_ints(f, {1, 1}));
  CHECK(bivmodpow(P, q, 6) == BiPoly::from_poly(poly_pow(Poly::from_ints(f, {1, 1}), 6)));
  for (u64 seed = 1; seed <= 6; ++seed) {
    BivariateInstance b = random_bivariate(f, 2 + seed % 3, 1 + seed % 3, seed);
    for (u64 N : {1ULL, 16ULL, 257ULL}) CHECK(bivmodpow(b.P, b.Q, N) == modpow_baseline(b.P, b.Q, N));
  }
}

TEST_CASE("vanishing resultant falls back") {
  const Field& f = Field::default_field();
  // P = y (y - x), Q = y: P(x, 0) = 0
  BiPoly P(f, {Poly(f), Poly::from_ints(f, {0, -1}), Poly::constant(f, 1)});
  PowerTrace tr;
  CHECK(bivmodpow(P, BiPoly::y_power(f, 1), 50, &tr) == modpow_baseline(P, BiPoly::y_power(f, 1), 50));
  CHECK(tr.fell_back);
  // Q = y + 1 shares nothing with P but Q^N still checks out
  BiPoly Q(f, {Poly::constant(f, 1), Poly::constant(f, 1)});
  CHECK(bivmodpow(P, Q, 50) == modpow_baseline(P, Q, 50));
}
