#include "audited_main.hpp"
#include "testutil.hpp"

using namespace polypow;

namespace {

CFiniteSpec singular_spec(const Field& f) {
  // characteristic polynomial (y - 2)(y - x)(y - x^2)
  return CFiniteSpec(f,
                     {Poly::from_ints(f, {0, 0, 0, 2}), Poly::from_ints(f, {0, -2, -2, -1}),
                      Poly::from_ints(f, {2, 1, 1})},
                     {Poly::constant(f, 3), Poly::from_ints(f, {2, 1, 1}), Poly::from_ints(f, {4, 0, 1, 0, 1})});
}

}  // namespace

TEST_CASE("first Fibonacci polynomials") {
  const Field& f = Field::default_field();
  CFiniteSpec fib = fibonacci_spec(f);
  CHECK(seq_term_ct(fib, 5) == Poly::from_ints(f, {1, 0, 3, 0, 1}));
  CHECK(seq_term_ct(fib, 4) == Poly::from_ints(f, {0, 2, 0, 1}));
  CHECK(seq_term_ct(fib, 0).is_zero());
  CHECK(seq_term_ct(fib, 1).is_one());
  CHECK(fib_closed_form(f, 6) == Poly::from_ints(f, {0, 3, 0, 4, 0, 1}));
}

TEST_CASE("Fibonacci against iteration and closed form") {
  const Field& f = Field::default_field();
  CFiniteSpec fib = fibonacci_spec(f);
  for (u64 N = 1; N <= 400; N += 13) {
    Poly u = seq_term_ct(fib, N);
    CHECK(u == seq_iterate(fib, N));
    CHECK(u == fib_closed_form(f, N));
    CHECK(u.degree() == static_cast<int>(N) - 1);
  }
}

TEST_CASE("random specs against iteration") {
  const Field& f = Field::default_field();
  for (u64 seed = 1; seed <= 20; ++seed) {
    CFiniteSpec spec = random_spec(f, 1 + seed % 3, seed % 3, seed);
    SeqTermSolver solver(spec);
    for (u64 N : {0ULL, 2ULL, 50ULL, 173ULL, 500ULL}) {
      Poly u = solver.term(N);
      CHECK(u == seq_iterate(spec, N));
      CHECK(u.degree() <= static_cast<int>(N) * spec.d() + spec.init_degree());
    }
  }
}

TEST_CASE("singular case is repaired") {
  const Field& f = Field::default_field();
  CFiniteSpec spec = singular_spec(f);
  for (u64 N : {10ULL, 100ULL}) {
    SeqTermTrace tr;
    Poly u = seq_term_ct(spec, N, &tr);
    Poly expect = Poly::constant(f, f.pow(2, N)) + Poly::monomial(f, 1, N) + Poly::monomial(f, 1, 2 * N);
    CHECK(u == expect);
    CHECK(tr.repaired);
    CHECK(tr.problem_indices == std::vector<u64>{0, N, 2 * N});
  }
}

TEST_CASE("trace and determinism") {
  const Field& f = Field::default_field();
  CFiniteSpec spec = random_spec(f, 2, 2, 5);
  SeqTermTrace a, b;
  Poly u = seq_term_ct(spec, 3000, &a);
  CHECK(u == seq_term_ct(spec, 3000, &b));
  CHECK_FALSE(a.iterated);
  CHECK(a.order >= 2);
  SeqTermTrace small;
  seq_term_ct(spec, 3, &small);
  CHECK(small.iterated);
  CHECK(spec_hash(spec) == spec_hash(random_spec(f, 2, 2, 5)));
  CHECK(spec_hash(spec) != spec_hash(random_spec(f, 2, 2, 6)));
}

TEST_CASE("degree bound must stay below the characteristic") {
  const Field& f = Field::of(1000003);
  CFiniteSpec fib = fibonacci_spec(f);
  CHECK_THROWS_AS(seq_term_ct(fib, 2000000), Error);
}

TEST_CASE("generating function") {
  const Field& f = Field::default_field();
  BiRat U = genfunc(fibonacci_spec(f));
  CHECK(U.num == BiPoly::y_power(f, 1));
  CHECK(U.den == BiPoly(f, {Poly::constant(f, 1), Poly::from_ints(f, {0, -1}), Poly::from_ints(f, {-1})}));
}
