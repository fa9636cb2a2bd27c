// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "testutil.hpp"

using namespace polypow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

int g_failed = 0;

void report(int id, const char* name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++g_failed;
  std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
  std::fflush(stdout);
}

// Poly in k from integer coefficients, k = x.
Poly kpoly(const Field& f, std::initializer_list<i64> c) { return Poly::from_ints(f, c); }

DiffOp fib_operator(const Field& f, u64 N) {
  u64 c0 = f.sub(1, f.mul(N, N));
  return DiffOp{{Poly(f, {c0}), Poly::from_ints(f, {0, 3}), Poly::from_ints(f, {4, 0, 1})}};
}

CFiniteSpec singular_spec(const Field& f) {
  return CFiniteSpec(f,
                     {Poly::from_ints(f, {0, 0, 0, 2}), Poly::from_ints(f, {0, -2, -2, -1}),
                      Poly::from_ints(f, {2, 1, 1})},
                     {Poly::constant(f, 3), Poly::from_ints(f, {2, 1, 1}), Poly::from_ints(f, {4, 0, 1, 0, 1})});
}

// ---- 1 ----
Outcome fibonacci_exactness() {
  const Field& f = Field::default_field();
  CFiniteSpec fib = fibonacci_spec(f);
  auto t0 = Clock::now();
  // Oracle: F_{n+1} = x F_n + F_{n-1} run directly on coefficient vectors.
  Poly prev(f), cur = Poly::constant(f, 1);
  std::size_t bad = 0;
  for (u64 N = 1; N <= 2000; ++N) {
    Poly u = seq_term_ct(fib, N);
    if (u != cur || u != fib_closed_form(f, N)) ++bad;
    Poly next = cur.shifted(1) + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  double secs = seconds_since(t0);
  bool f5 = seq_term_ct(fib, 5) == kpoly(f, {1, 0, 3, 0, 1});
  bool f4 = seq_term_ct(fib, 4) == kpoly(f, {0, 2, 0, 1});
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu mismatches over N=1..2000, F5 %s, F4 %s, %.2f s (limit 10 s)", bad,
                f5 ? "ok" : "wrong", f4 ? "ok" : "wrong", secs);
  return {bad == 0 && f5 && f4 && secs < 10.0, buf};
}

// ---- 2 ----
Outcome telescoper_values() {
  const Field& f = Field::default_field();
  BiRat U = genfunc(fibonacci_spec(f));
  std::size_t ops_ok = 0, rec_ok = 0, total = 0;
  for (u64 N : {2ULL, 5ULL, 10ULL, 1000ULL, 123456789ULL}) {
    ++total;
    DiffOp L = telescoper_at(U, N);
    if (L == fib_operator(f, N)) ++ops_ok;
    Rec rec = ode_to_rec(L);
    if (rec.order() != 2 || !rec.p[1].is_zero()) continue;
    // c_{k+2} / c_k = -p_0 / p_2 must equal (N+k+1)(N-k-1) / (4(k+1)(k+2))
    Poly n = Poly::constant(f, N % f.modulus());
    Poly k = Poly::x(f);
    Poly one = Poly::constant(f, 1);
    Poly ratio_num = (n + k + one) * (n - k - one);
    Poly ratio_den = (k + one) * (k + one + one) * Poly::constant(f, 4);
    if (-rec.p[0] * ratio_den == ratio_num * rec.p[2]) ++rec_ok;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "operator exact for %zu/%zu N, recurrence ratio exact for %zu/%zu N", ops_ok, total,
                rec_ok, total);
  return {ops_ok == total && rec_ok == total, buf};
}

// ---- 3 ----
Outcome singular_case() {
  const Field& f = Field::default_field();
  CFiniteSpec spec = singular_spec(f);
  TelescoperEngine engine(genfunc(spec));
  std::string detail;
  bool ok = true;
  for (u64 N : {10ULL, 100ULL, 1000ULL}) {
    SeqTermTrace tr;
    Poly u = seq_term_ct(spec, N, &tr);
    Poly expect = Poly::constant(f, f.pow(2, N)) + Poly::monomial(f, 1, N) + Poly::monomial(f, 1, 2 * N);
    Rec rec = ode_to_rec(engine.at(N));
    Poly k = Poly::x(f), n = Poly::constant(f, N);
    Poly target = (n + n - k) * (n - k) * k;
    bool rec_ok = rec.order() == 0 && rec.p[0].monic() == target.monic();
    u64 K = N * static_cast<u64>(spec.d()) + static_cast<u64>(spec.init_degree());
    auto probs = detect_problem_indices(rec, K);
    bool probs_ok = probs == std::vector<u64>{0, N, 2 * N} && tr.problem_indices == probs;
    bool term_ok = u == expect;
    ok = ok && rec_ok && probs_ok && term_ok;
    detail += "N=" + std::to_string(N) + (term_ok ? " term ok" : " term WRONG") + (rec_ok ? ", rec ok" : ", rec WRONG") +
              (probs_ok ? ", indices {0,N,2N}" : ", indices WRONG") + (N < 1000 ? "; " : "");
  }
  return {ok, detail};
}

// ---- 4 ----
Outcome oracle_equivalence() {
  const Field& f = Field::default_field();
  auto t0 = Clock::now();
  std::size_t total = 0, matches = 0;
  for (std::size_t r = 2; r <= 4; ++r) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (u64 seed = 1; seed <= 10; ++seed) {
        PolyMatrix M = random_matrix(f, r, d, seed);
        BivariateInstance b = random_bivariate(f, r, d, seed);
        for (u64 N : {1ULL, 16ULL, 257ULL, 1000ULL, 4096ULL}) {
          total += 2;
          if (polmatpow(M, N) == binpow_matrix(M, N)) ++matches;
          if (bivmodpow(b.P, b.Q, N) == modpow_baseline(b.P, b.Q, N)) ++matches;
        }
      }
    }
  }
  double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu/%zu exact matches, %.1f s (limit 300 s)", matches, total, secs);
  return {matches == total && secs < 300.0, buf};
}

// ---- 5 ----
Outcome structure_counts() {
  const Field& f = Field::default_field();
  struct Cell {
    std::size_t r, d;
  };
  std::string detail;
  bool ok = true;
  for (Cell c : {Cell{2, 2}, Cell{2, 4}, Cell{3, 1}, Cell{3, 2}, Cell{4, 1}}) {
    const std::size_t r = c.r, d = c.d;
    const int want_n = static_cast<int>((r - 1) * (r + 2) / 2);
    const int want_x = static_cast<int>(d * r * (r + 1) * (2 * r - 1) / 2 - r * (r - 1));
    int hits = 0;
    for (u64 seed = 1; seed <= 5; ++seed) {
      PolyMatrix M = random_matrix(f, r, d, seed);
      SymbolicDiffOp L = telescoper_symbolic(genfunc(entry_sequence_spec(M, 0, r - 1)), want_n);
      if (L.order == r && L.deg_n == want_n && L.deg_x == want_x) ++hits;
    }
    ok = ok && hits >= 4;
    detail += "(" + std::to_string(r) + "," + std::to_string(d) + ")->(" + std::to_string(r) + "," +
              std::to_string(want_n) + "," + std::to_string(want_x) + ") " + std::to_string(hits) + "/5; ";
  }
  return {ok, detail + "need >= 4/5 per cell"};
}

// ---- 6, 7 ----
struct Timings {
  double ur[3], it[3];
  double bp20;
  bool correct;
};

Timings measure_r2d2() {
  const Field& f = Field::default_field();
  PolyMatrix M = random_matrix(f, 2, 2, 1);
  CFiniteSpec spec = entry_sequence_spec(M, 0, 1);
  SeqTermSolver solver(spec);
  solver.engine();
  Timings t{};
  t.correct = true;
  const u64 Ns[3] = {u64{1} << 16, u64{1} << 18, u64{1} << 20};
  for (int i = 0; i < 3; ++i) {
    std::vector<double> ur, it;
    for (int rep = 0; rep < 3; ++rep) {
      SeqTermTrace tr;
      Poly u = solver.term(Ns[i], &tr);
      ur.push_back(tr.ur_ns * 1e-9);
      it.push_back(tr.it_ns * 1e-9);
      if (i == 2 && rep == 0) {
        std::vector<double> bp;
        for (int b = 0; b < 3; ++b) {
          auto t0 = Clock::now();
          PolyMatrix B = binpow_matrix(M, Ns[i]);
          bp.push_back(seconds_since(t0));
          if (b == 0) t.correct = B.at(0, 1) == u;
        }
        std::sort(bp.begin(), bp.end());
        t.bp20 = bp[1];
      }
    }
    std::sort(ur.begin(), ur.end());
    std::sort(it.begin(), it.end());
    t.ur[i] = ur[1];
    t.it[i] = it[1];
  }
  return t;
}

Outcome ur_linearity(const Timings& t) {
  double q1 = t.ur[1] / t.ur[0], q2 = t.ur[2] / t.ur[1];
  double it_share = t.it[2] / t.ur[2];
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "UR(2^16)=%.4f s UR(2^18)=%.4f s UR(2^20)=%.4f s, ratios %.2f %.2f (limit 5.0); IT(2^20)=%.2e s = "
                "%.3f%% of UR (limit 2%%)",
                t.ur[0], t.ur[1], t.ur[2], q1, q2, t.it[2], 100.0 * it_share);
  return {q1 <= 5.0 && q2 <= 5.0 && it_share < 0.02, buf};
}

Outcome beats_binary_powering(const Timings& t) {
  double speedup = t.bp20 / (t.it[2] + t.ur[2]);
  char buf[160];
  std::snprintf(buf, sizeof buf, "BP=%.3f s, IT+UR=%.3f s, speedup %.2f (limit 2.0), results %s", t.bp20,
                t.it[2] + t.ur[2], speedup, t.correct ? "equal" : "DIFFER");
  return {speedup >= 2.0 && t.correct, buf};
}

// ---- 8 ----
Outcome reduction_identities() {
  const Field& f = Field::default_field();
  SplitMix64 g(2024);
  std::uint64_t calls0 = reduction_audit::calls(), fails0 = reduction_audit::failures();
  std::size_t direct = 0, pointwise_bad = 0;
  for (int t = 0; t < 10000; ++t) {
    Poly a = testutil::random_poly(f, g, 1 + t % 3), b = testutil::random_poly(f, g, t % 4);
    Poly c = testutil::random_poly(f, g, t % 2);
    Poly Q = a * a * b * c * c * c;
    if (Q[0] == 0) continue;
    Poly P = testutil::random_poly(f, g, static_cast<int>(g.below(12)));
    u64 lambda = 64 + g.below(f.modulus() - 128);
    auto [B, r] = param_reduce_scalar(P, Q, lambda);
    ++direct;
    if (!testutil::reduction_holds_at(P, Q, lambda, B, r, 1 + g.below(f.modulus() - 1))) ++pointwise_bad;
  }
  for (int t = 0; t < 60; ++t) {
    YPolyL a(testutil::random_bipoly(f, g, 1, 1)), b(testutil::random_bipoly(f, g, 1 + t % 2, 1));
    YPolyL Q = a * a * b;
    if (Q[0].is_zero()) continue;
    param_reduce(YPolyL(testutil::random_bipoly(f, g, 4, 2)), Q, 1000 + t);
    ++direct;
  }
  std::uint64_t audited = reduction_audit::calls() - calls0;
  std::uint64_t failed = reduction_audit::failures() - fails0;

  std::size_t ch_total = 0, ch_ok = 0;
  for (std::size_t r = 1; r <= 4; ++r) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (u64 seed = 1; seed <= 5; ++seed) {
        PolyMatrix M = random_matrix(f, r, d, 500 + seed);
        ++ch_total;
        if (eval_at_matrix(charpoly(M), M).is_zero()) ++ch_ok;
      }
    }
  }
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "%zu randomized param_reduce calls, %llu audited reductions, %llu audit failures, %zu pointwise "
                "failures; Cayley-Hamilton %zu/%zu",
                direct, static_cast<unsigned long long>(audited), static_cast<unsigned long long>(failed),
                pointwise_bad, ch_ok, ch_total);
  return {direct >= 10000 && audited >= direct && failed == 0 && pointwise_bad == 0 && ch_ok == ch_total, buf};
}

}  // namespace

int main() {
  reduction_audit::set_enabled(true);
  report(1, "Fibonacci exactness", fibonacci_exactness);
  report(2, "telescoper values", telescoper_values);
  report(3, "singular case", singular_case);
  report(4, "oracle equivalence", oracle_equivalence);
  report(5, "telescoper structure", structure_counts);

  // Timings run without the audit so they measure the algorithm alone.
  reduction_audit::set_enabled(false);
  Timings t{};
  bool measured = true;
  std::string err;
  try {
    t = measure_r2d2();
  } catch (const std::exception& e) {
    measured = false;
    err = e.what();
  }
  report(6, "linear unrolling", [&]() -> Outcome {
    return measured ? ur_linearity(t) : Outcome{false, "exception: " + err};
  });
  report(7, "speedup over binary powering", [&]() -> Outcome {
    return measured ? beats_binary_powering(t) : Outcome{false, "exception: " + err};
  });

  reduction_audit::set_enabled(true);
  report(8, "reduction identities", reduction_identities);

  std::printf("%s: %d of 8 criteria failed\n", g_failed ? "FAIL" : "PASS", g_failed);
  return g_failed ? 1 : 0;
}
