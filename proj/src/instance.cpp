#include "polypow/instance.hpp"

namespace polypow {

namespace {

Poly random_poly(const Field& f, std::size_t d, SplitMix64& rng) {
  std::vector<u64> c(d + 1);
  for (auto& x : c) x = rng.below(f.modulus());
  return Poly(f, std::move(c));
}

}  // namespace

PolyMatrix random_matrix(const Field& f, std::size_t r, std::size_t d, u64 seed) {
  SplitMix64 rng(seed);
  std::vector<Poly> e;
  for (std::size_t i = 0; i < r * r; ++i) e.push_back(random_poly(f, d, rng));
  return PolyMatrix(f, r, std::move(e));
}

CFiniteSpec random_spec(const Field& f, std::size_t r, std::size_t d, u64 seed) {
  SplitMix64 rng(seed);
  std::vector<Poly> c, init;
  for (std::size_t i = 0; i < r; ++i) c.push_back(random_poly(f, d, rng));
  for (std::size_t i = 0; i < r; ++i) init.push_back(random_poly(f, d, rng));
  return CFiniteSpec(f, std::move(c), std::move(init));
}

BivariateInstance random_bivariate(const Field& f, std::size_t r, std::size_t d, u64 seed) {
  SplitMix64 rng(seed);
  std::vector<Poly> p, q;
  for (std::size_t i = 0; i < r; ++i) p.push_back(random_poly(f, d, rng));
  p.push_back(Poly::constant(f, 1));
  for (std::size_t i = 0; i < r; ++i) q.push_back(random_poly(f, d, rng));
  return {BiPoly(f, std::move(p)), BiPoly(f, std::move(q))};
}

std::string gen_instance(InstanceKind kind, std::size_t r, std::size_t d, u64 seed, const Field& f) {
  switch (kind) {
    case InstanceKind::Matrix: return format_matrix(random_matrix(f, r, d, seed));
    case InstanceKind::Spec: return format_spec(random_spec(f, r, d, seed));
    case InstanceKind::Bivariate: return format_bivariate(random_bivariate(f, r, d, seed));
  }
  throw Error(Error::Kind::Internal, "gen", "unknown instance kind");
}

}  // namespace polypow
