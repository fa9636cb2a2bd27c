#pragma once

#include <map>
#include <vector>

#include "polypow/telescope.hpp"

namespace polypow {

// sum_t p_t(k) c_{k+t} = 0 for all k >= 0, with c_j = 0 for j < 0.
struct Rec {
  std::vector<Poly> p;
  // The relations for k < trivial_below hold for every sequence; ode_to_rec
  // sets this when the lowest shift sits below x^0.
  std::size_t trivial_below = 0;

  std::size_t order() const { return p.empty() ? 0 : p.size() - 1; }
  const Field& field() const { return p.back().field(); }
  bool operator==(const Rec& o) const { return p == o.p; }
};

// u_{n+r} = c_{r-1} u_{n+r-1} + ... + c_0 u_n with initial terms u_0 .. u_{r-1}.
struct CFiniteSpec {
  const Field* field = nullptr;
  std::vector<Poly> c;
  std::vector<Poly> init;

  CFiniteSpec() = default;
  CFiniteSpec(const Field& f, std::vector<Poly> coeffs, std::vector<Poly> initial);

  std::size_t r() const { return c.size(); }
  int d() const;          // max deg c_i, 0 when all vanish
  int init_degree() const;  // max deg u_j, 0 when all vanish
  bool operator==(const CFiniteSpec& o) const { return c == o.c && init == o.init; }
};

Rec ode_to_rec(const DiffOp& L);

// First s coefficients of u_N, by binary powering modulo the characteristic
// polynomial with coefficients truncated mod x^s.
std::vector<u64> companion_pow_mod(const CFiniteSpec& spec, u64 N, std::size_t s);

// c_0 .. c_K from c_0 .. c_{s-1}; `known` supplies the values at indices
// k + s where p_s(k) = 0.
std::vector<u64> unroll(const Rec& rec, const std::vector<u64>& init, u64 K, const std::map<u64, u64>& known = {});

// { k + s : 0 <= k <= K - s, p_s(k) = 0 }
std::vector<u64> detect_problem_indices(const Rec& rec, u64 K);

u64 choose_ordinary_point(const DiffOp& L);
DiffOp shift_ode(const DiffOp& L, u64 c);
CFiniteSpec shift_spec(const CFiniteSpec& spec, u64 c);

// Coefficients of u(x) at `targets` given the coefficients d of v(x) = u(x + c).
std::map<u64, u64> recover_coefficients(const Field& f, const std::vector<u64>& d, u64 c,
                                        const std::vector<u64>& targets);

}  // namespace polypow
