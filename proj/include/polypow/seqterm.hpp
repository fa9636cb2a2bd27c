#pragma once

#include <memory>
#include <vector>

#include "polypow/holo.hpp"

namespace polypow {

// (v_0 + ... + v_{r-1} y^(r-1)) / (1 - c_{r-1} y - ... - c_0 y^r)
BiRat genfunc(const CFiniteSpec& spec);

// u_N by running the recurrence forward.
Poly seq_iterate(const CFiniteSpec& spec, u64 N);

CFiniteSpec fibonacci_spec(const Field& f);
// F_N = sum_l binom(N-l-1, l) x^(N-2l-1)
Poly fib_closed_form(const Field& f, u64 N);

struct SeqTermTrace {
  std::uint64_t ct_ns = 0;  // telescoper and recurrence
  std::uint64_t it_ns = 0;  // initial terms
  std::uint64_t ur_ns = 0;  // unrolling, including singular repair
  bool iterated = false;    // answered by forward iteration
  bool repaired = false;
  std::size_t order = 0;    // recurrence order s
  std::vector<u64> problem_indices;
  u64 ordinary_point = 0;
  std::vector<std::string> events;
};

class SeqTermSolver {
 public:
  explicit SeqTermSolver(CFiniteSpec spec);
  SeqTermSolver(CFiniteSpec spec, std::shared_ptr<TelescoperEngine> engine);

  const CFiniteSpec& spec() const { return spec_; }
  const TelescoperEngine& engine();
  Poly term(u64 N, SeqTermTrace* trace = nullptr);

 private:
  CFiniteSpec spec_;
  std::shared_ptr<TelescoperEngine> engine_;
};

// Uses a process-wide engine cache keyed by spec_hash.
Poly seq_term_ct(const CFiniteSpec& spec, u64 N, SeqTermTrace* trace = nullptr);

u64 spec_hash(const CFiniteSpec& spec);

}  // namespace polypow
