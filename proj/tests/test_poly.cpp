#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "testutil.hpp"

using namespace polypow;
using testutil::random_poly;

TEST_CASE("normalization and basic values") {
  const Field& f = Field::default_field();
  Poly z = Poly::from_ints(f, {0, 0, 0});
  CHECK(z.is_zero());
  CHECK(z.degree() == Poly::kMinusInfinity);
  Poly a = Poly::from_ints(f, {1, 2, 0});
  CHECK(a.degree() == 1);
  CHECK((a - a).is_zero());
  CHECK(Poly::from_ints(f, {-1})[0] == f.modulus() - 1);
}

TEST_CASE("multiplication paths agree") {
  for (u64 p : std::vector<u64>{998244353ULL, Field::kDefaultPrime, 4611686018427387847ULL}) {
    const Field& f = Field::of(p);
    SplitMix64 g(p);
    for (int n : {0, 5, 40, 170, 600}) {
      Poly a = random_poly(f, g, n), b = random_poly(f, g, n + 3);
      Poly ref = mul_schoolbook(a, b);
      CHECK(mul_karatsuba(a, b) == ref);
      CHECK(mul_crt(a, b) == ref);
      CHECK(a * b == ref);
      if (f.two_adicity() >= 12) CHECK(mul_ntt(a, b) == ref);
      CHECK(mul_trunc(a, b, 7) == ref.truncated(7));
    }
  }
}

TEST_CASE("division with remainder") {
  const Field& f = Field::default_field();
  SplitMix64 g(2);
  for (int t = 0; t < 30; ++t) {
    Poly a = random_poly(f, g, 5 + t * 7), b = random_poly(f, g, 1 + t % 9);
    auto [q, r] = poly_divrem(a, b);
    CHECK(q * b + r == a);
    CHECK(r.degree() < b.degree());
  }
  CHECK_THROWS_AS(poly_divrem(Poly::x(f), Poly(f)), Error);
  // (x^3 + 2x + 1) / (x - 1) = x^2 + x + 3 rem 4
  auto [q, r] = poly_divrem(Poly::from_ints(f, {1, 2, 0, 1}), Poly::from_ints(f, {-1, 1}));
  CHECK(q == Poly::from_ints(f, {3, 1, 1}));
  CHECK(r == Poly::constant(f, 4));
}

TEST_CASE("gcd and extended gcd") {
  const Field& f = Field::default_field();
  CHECK(poly_gcd(Poly::from_ints(f, {0, -1, 0, 1}), Poly::from_ints(f, {-1, 0, 1})) == Poly::from_ints(f, {-1, 0, 1}));
  SplitMix64 g(4);
  for (int t = 0; t < 10; ++t) {
    Poly c = random_poly(f, g, 3).monic();
    Poly a = c * random_poly(f, g, 8), b = c * random_poly(f, g, 6);
    auto e = poly_ext_gcd(a, b);
    CHECK(e.s * a + e.t * b == e.g);
    CHECK(poly_rem(e.g, c).is_zero());
    CHECK(e.g.lc() == 1);
  }
  Poly m = Poly::from_ints(f, {1, 0, 1});
  CHECK(poly_rem(poly_inv_mod(Poly::x(f), m) * Poly::x(f), m).is_one());
}

TEST_CASE("squarefree factorization") {
  const Field& f = Field::default_field();
  Poly a = Poly::from_ints(f, {1, 1}), b = Poly::from_ints(f, {-2, 0, 1}), c = Poly::from_ints(f, {5, 1});
  Poly q = (a * b * b * c * c * c).scaled(7);
  auto s = yun_squarefree(q);
  CHECK(s.lc == 7);
  CHECK(s.expand() == q);
  CHECK(s.star() == (a * b * c).monic());
  CHECK(s.minus() == (b * c * c).monic());
  REQUIRE(s.factors.size() == 3);
  CHECK(s.factors[0].second == 1);
  CHECK(s.factors[2].second == 3);
}

TEST_CASE("taylor shift, evaluation, interpolation, reversal") {
  const Field& f = Field::default_field();
  SplitMix64 g(5);
  Poly a = random_poly(f, g, 60);
  u64 c = g.below(f.modulus());
  Poly s = taylor_shift(a, c);
  for (u64 x : {0ULL, 1ULL, 12345ULL}) CHECK(s.eval(x) == a.eval(f.add(x, c)));
  CHECK(taylor_shift(Poly::from_ints(f, {0, 0, 1}), 1) == Poly::from_ints(f, {1, 2, 1}));

  std::vector<u64> xs, ys;
  for (u64 i = 0; i < 61; ++i) {
    xs.push_back(i * 7 + 3);
    ys.push_back(a.eval(i * 7 + 3));
  }
  CHECK(poly_interp(f, xs, ys) == a);
  auto many = poly_interp_many(f, xs, {ys, std::vector<u64>(61, 5)});
  CHECK(many[0] == a);
  CHECK(many[1] == Poly::constant(f, 5));

  CHECK(poly_reverse(Poly::from_ints(f, {1, 2, 3}), 4) == Poly::from_ints(f, {0, 0, 3, 2, 1}));
}

TEST_CASE("resultant equals product over roots") {
  const Field& f = Field::default_field();
  SplitMix64 g(6);
  for (int t = 0; t < 10; ++t) {
    std::vector<u64> roots(1 + t % 5);
    Poly a = Poly::constant(f, 1);
    for (auto& r : roots) {
      r = g.below(f.modulus());
      a *= Poly(f, {f.neg(r), 1});
    }
    Poly b = random_poly(f, g, 1 + t % 4);
    u64 expect = 1;
    for (u64 r : roots) expect = f.mul(expect, b.eval(r));
    CHECK(poly_resultant(a, b) == expect);
  }
}

TEST_CASE("power by repeated multiplication") {
  const Field& f = Field::default_field();
  Poly a = Poly::from_ints(f, {1, 1});
  Poly acc = Poly::constant(f, 1);
  for (int i = 0; i < 20; ++i) acc *= a;
  CHECK(poly_pow(a, 20) == acc);
  CHECK(poly_pow(a, 20)[10] == 184756);
}

TEST_CASE("parsing") {
  const Field& f = Field::default_field();
  CHECK(parse_poly(f, "1 -2 3") == Poly::from_ints(f, {1, -2, 3}));
  CHECK(parse_poly(f, "0").is_zero());
  CHECK_THROWS_AS(parse_poly(f, "1 x 3"), Error);
}
