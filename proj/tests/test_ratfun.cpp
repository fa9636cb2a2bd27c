#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "polypow/ratfun.hpp"
#include "testutil.hpp"

using namespace polypow;
using testutil::random_poly;

TEST_CASE("canonical form") {
  const Field& f = Field::default_field();
  // (x^2 - 1) / (2x - 2) = (x + 1) / 2
  RatFun r(Poly::from_ints(f, {-1, 0, 1}), Poly::from_ints(f, {-2, 2}));
  CHECK(r.den().is_one());
  CHECK(r.num() == Poly::from_ints(f, {1, 1}).scaled(f.inv(2)));
  CHECK(r.is_canonical());
  CHECK_THROWS_AS(RatFun(Poly::x(f), Poly(f)), Error);
}

TEST_CASE("field operations") {
  const Field& f = Field::default_field();
  SplitMix64 g(11);
  for (int t = 0; t < 20; ++t) {
    RatFun a(random_poly(f, g, 4), random_poly(f, g, 3));
    RatFun b(random_poly(f, g, 2), random_poly(f, g, 5));
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    CHECK(ratfun_arith(a, b, RatOp::Sub) == a - b);
    CHECK((a * b).is_canonical());
    u64 x = g.below(f.modulus());
    CHECK((a + b).eval(x) == f.add(a.eval(x), b.eval(x)));
    CHECK((a * a.inverse()) == RatFun::constant(f, 1));
  }
  // d/dx 1/x = -1/x^2
  RatFun inv_x(Poly::constant(f, 1), Poly::x(f));
  CHECK(inv_x.derivative() == RatFun(Poly::constant(f, f.from_int(-1)), Poly::from_ints(f, {0, 0, 1})));
  CHECK_THROWS_AS(inv_x.eval(0), Error);
}

TEST_CASE("rational reconstruction") {
  const Field& f = Field::default_field();
  SplitMix64 g(12);
  for (int t = 0; t < 10; ++t) {
    RatFun target(random_poly(f, g, 2 + t), random_poly(f, g, 5 - t % 4));
    int dn = target.num().degree(), dd = target.den().degree();
    std::vector<u64> xs, ys;
    for (int i = 0; i < dn + dd + 2; ++i) {
      u64 x = g.below(f.modulus());
      if (target.den().eval(x) == 0) continue;
      xs.push_back(x);
      ys.push_back(target.eval(x));
    }
    CHECK(ratfun_reconstruct(f, xs, ys, dn, dd) == target);
    CHECK(ratfun_reconstruct(f, xs, ys, dn + 1, dd) == target);
  }
}

TEST_CASE("reconstruction reports insufficient bounds") {
  const Field& f = Field::default_field();
  RatFun target(Poly::from_ints(f, {1, 2, 3}), Poly::from_ints(f, {5, 0, 0, 1}));
  std::vector<u64> xs, ys;
  for (u64 x = 1; x <= 8; ++x) {
    xs.push_back(x);
    ys.push_back(target.eval(x));
  }
  CHECK_THROWS_AS(ratfun_reconstruct(f, xs, ys, 1, 1), Error);
}
