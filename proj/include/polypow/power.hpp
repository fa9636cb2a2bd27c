#pragma once

#include <string>
#include <vector>

#include "polypow/matrix.hpp"
#include "polypow/seqterm.hpp"

namespace polypow {

// Degenerate inputs fall back to binary powering; those events land here.
struct PowerTrace {
  std::uint64_t ct_ns = 0, it_ns = 0, ur_ns = 0;
  std::vector<std::string> events;
  bool fell_back = false;

  void absorb(const SeqTermTrace& t);
};

// Sequence (M^n)_{i,j}: recurrence from the characteristic polynomial,
// initial terms from M^0 .. M^(r-1).
CFiniteSpec entry_sequence_spec(const PolyMatrix& M, std::size_t i, std::size_t j);

PolyMatrix binpow_matrix(const PolyMatrix& M, u64 N);
BiPoly modpow_baseline(const BiPoly& P, const BiPoly& Q, u64 N);

// y^N mod P through the sequence with generating function 1 / (y^r P(x, 1/y)).
// Requires P monic in y with P(x, 0) != 0.
BiPoly y_pow_mod(const BiPoly& P, u64 N, PowerTrace* trace = nullptr);
BiPoly bivmodpow(const BiPoly& P, const BiPoly& Q, u64 N, PowerTrace* trace = nullptr);
PolyMatrix polmatpow(const PolyMatrix& M, u64 N, PowerTrace* trace = nullptr);

}  // namespace polypow
