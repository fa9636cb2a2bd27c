#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "testutil.hpp"

using namespace polypow;

namespace {

u64 mulmod_ref(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

const std::vector<u64> kPrimes = {7, 998244353, 1125845146009601ULL, 4611686018427387847ULL};

}  // namespace

TEST_CASE("prime test") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(998244353));
  CHECK(is_prime_u64(Field::kDefaultPrime));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(998244353ULL * 3));
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("field registry interns and validates") {
  CHECK(&Field::of(998244353) == &Field::of(998244353));
  CHECK_THROWS_AS(Field::of(15), Error);
  CHECK_THROWS_AS(Field::of(2), Error);
}

TEST_CASE("arithmetic matches 128-bit reference") {
  for (u64 p : kPrimes) {
    const Field& f = Field::of(p);
    SplitMix64 g(p);
    for (int i = 0; i < 20000; ++i) {
      u64 a = g.below(p), b = g.below(p);
      REQUIRE(f.mul(a, b) == mulmod_ref(a, b, p));
      REQUIRE(f.add(a, b) == (a + b) % p);
      REQUIRE(f.sub(a, b) == (a + p - b) % p);
    }
    for (int i = 0; i < 2000; ++i) {
      u128 x = (static_cast<u128>(g.below(p)) << 64) | g.next();
      REQUIRE(f.reduce(x) == static_cast<u64>(x % p));
    }
  }
}

TEST_CASE("inverse, power, signed conversion") {
  const Field& f = Field::default_field();
  SplitMix64 g(3);
  for (int i = 0; i < 1000; ++i) {
    u64 a = 1 + g.below(f.modulus() - 1);
    CHECK(f.mul(a, f.inv(a)) == 1);
    u64 e = g.below(50);
    u64 acc = 1;
    for (u64 k = 0; k < e; ++k) acc = f.mul(acc, a);
    CHECK(f.pow(a, e) == acc);
  }
  CHECK(f.pow(5, f.modulus() - 1) == 1);
  CHECK_THROWS_AS(f.inv(0), Error);
  CHECK(f.from_int(-1) == f.modulus() - 1);
  CHECK(f.to_signed(f.from_int(-12345)) == -12345);
  FieldElement a(f, 6), b(f, 4);
  CHECK(field_arith(a, b, FieldOp::Div) * b == a);
  CHECK(field_pow(b, 3).value() == 64);
}

TEST_CASE("roots of unity have exact order") {
  const Field& f = Field::default_field();
  CHECK(f.two_adicity() == 30);
  for (unsigned k : {1u, 5u, 30u}) {
    u64 w = f.root_of_unity(k);
    CHECK(f.pow(w, u64{1} << k) == 1);
    CHECK(f.pow(w, u64{1} << (k - 1)) == f.modulus() - 1);
  }
}

TEST_CASE("batch inversion leaves zeros alone") {
  const Field& f = Field::of(998244353);
  std::vector<u64> a = {3, 0, 7, 1, 0, 998244352};
  auto b = a;
  f.batch_inv(b.data(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i] == (a[i] ? f.inv(a[i]) : 0));
}

TEST_CASE("factorial table") {
  const Field& f = Field::default_field();
  FactorialTable t(f, 50);
  u64 fact = 1;
  for (u64 k = 1; k <= 50; ++k) {
    fact = f.mul(fact, k);
    CHECK(t.fact(k) == fact);
    CHECK(f.mul(t.fact(k), t.inv_fact(k)) == 1);
    CHECK(f.mul(t.inv(k), k) == 1);
  }
  CHECK(t.binom(10, 3) == 120);
  CHECK(t.binom(3, 10) == 0);
}

TEST_CASE("SplitMix64 reference stream") {
  // First outputs for seed 0 from the published reference implementation.
  SplitMix64 g(0);
  CHECK(g.next() == 0xe220a8397b1dcdafULL);
  CHECK(g.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(g.next() == 0x06c45d188009454fULL);
}
