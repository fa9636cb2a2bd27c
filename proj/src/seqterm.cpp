#include "polypow/seqterm.hpp"

#include <chrono>
#include <list>
#include <mutex>

namespace polypow {

namespace {

std::uint64_t now_ns() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

}  // namespace

BiRat genfunc(const CFiniteSpec& spec) {
  const Field& f = *spec.field;
  const std::size_t r = spec.r();
  std::vector<Poly> num(r, Poly(f)), den(r + 1, Poly(f));
  for (std::size_t k = 0; k < r; ++k) {
    Poly v = spec.init[k];
    for (std::size_t j = 1; j <= k; ++j) v -= spec.c[r - j] * spec.init[k - j];
    num[k] = std::move(v);
  }
  den[0] = Poly::constant(f, 1);
  for (std::size_t j = 1; j <= r; ++j) den[j] = -spec.c[r - j];
  return BiRat(BiPoly(f, std::move(num)), BiPoly(f, std::move(den)));
}

Poly seq_iterate(const CFiniteSpec& spec, u64 N) {
  const std::size_t r = spec.r();
  if (N < r) return spec.init[N];
  std::vector<Poly> w = spec.init;  // w[(n) mod r] holds u_n
  for (u64 n = r; n <= N; ++n) {
    Poly next(*spec.field);
    for (std::size_t i = 0; i < r; ++i) {
      const Poly& u = w[(n - r + i) % r];
      if (!spec.c[i].is_zero() && !u.is_zero()) next += spec.c[i] * u;
    }
    w[n % r] = std::move(next);
  }
  return w[N % r];
}

CFiniteSpec fibonacci_spec(const Field& f) {
  // F_{n+2} = x F_{n+1} + F_n, F_0 = 0, F_1 = 1
  return CFiniteSpec(f, {Poly::constant(f, 1), Poly::x(f)}, {Poly(f), Poly::constant(f, 1)});
}

Poly fib_closed_form(const Field& f, u64 N) {
  if (N == 0) return Poly(f);
  FactorialTable tab(f, N);
  std::vector<u64> c(N, 0);
  for (u64 l = 0; 2 * l + 1 <= N; ++l) c[N - 2 * l - 1] = tab.binom(N - l - 1, l);
  return Poly(f, std::move(c));
}

u64 spec_hash(const CFiniteSpec& spec) {
  Fnv1a h;
  h.add(spec.field->modulus());
  h.add(spec.r());
  for (const auto* group : {&spec.c, &spec.init}) {
    for (const auto& p : *group) {
      h.add(p.size());
      for (u64 c : p.coeffs()) h.add(c);
    }
  }
  return h.value();
}

SeqTermSolver::SeqTermSolver(CFiniteSpec spec) : spec_(std::move(spec)) {}

SeqTermSolver::SeqTermSolver(CFiniteSpec spec, std::shared_ptr<TelescoperEngine> engine)
    : spec_(std::move(spec)), engine_(std::move(engine)) {}

const TelescoperEngine& SeqTermSolver::engine() {
  if (!engine_) engine_ = std::make_shared<TelescoperEngine>(genfunc(spec_));
  return *engine_;
}

Poly SeqTermSolver::term(u64 N, SeqTermTrace* trace) {
  SeqTermTrace local;
  SeqTermTrace& tr = trace ? *trace : local;
  const Field& f = *spec_.field;
  const std::size_t r = spec_.r();
  if (N < r) return spec_.init[N];
  const u64 d = static_cast<u64>(spec_.d());
  const u64 e = static_cast<u64>(spec_.init_degree());
  auto iterate = [&](const char* why) {
    tr.iterated = true;
    tr.events.emplace_back(why);
    std::uint64_t t0 = now_ns();
    Poly u = seq_iterate(spec_, N);
    tr.ur_ns += now_ns() - t0;
    return u;
  };
  if (d == 0) return iterate("constant coefficients: forward iteration");
  if (N > (f.modulus() - 1 - e) / d) {
    throw Error(Error::Kind::Precondition, "seqterm", "prime too small: need p > N*d + e + s");
  }

  std::uint64_t t0 = now_ns();
  DiffOp L;
  try {
    L = engine().at(f.reduce64(N));
  } catch (const Error& err) {
    if (err.kind() != Error::Kind::ParameterCollision) throw;
    tr.ct_ns += now_ns() - t0;
    return iterate("parameter collision in reduction: forward iteration");
  }
  Rec rec = ode_to_rec(L);
  const std::size_t s = rec.order();
  tr.order = s;
  tr.ct_ns += now_ns() - t0;
  if (N * d <= 4 * static_cast<u64>(s)) return iterate("small N: forward iteration");

  const u64 D = N * d + e;
  const u64 K = D + s;
  if (K >= f.modulus()) throw Error(Error::Kind::Precondition, "seqterm", "prime too small: need p > N*d + e + s");

  std::uint64_t t1 = now_ns();
  const std::size_t n_init = s + rec.trivial_below;
  std::vector<u64> head = companion_pow_mod(spec_, N, n_init);
  std::uint64_t t2 = now_ns();
  tr.it_ns += t2 - t1;
  std::vector<u64> problems = detect_problem_indices(rec, K);
  tr.problem_indices = problems;

  std::map<u64, u64> known;
  std::vector<u64> targets;
  for (u64 k : problems) {
    if (k < n_init) {
      known[k] = head[k];
    } else {
      targets.push_back(k);
    }
  }
  if (!targets.empty()) {
    // Solve around an ordinary point, where the recurrence is regular, and
    // read the missing coefficients back through the binomial expansion.
    tr.repaired = true;
    const u64 c = choose_ordinary_point(L);
    tr.ordinary_point = c;
    DiffOp L2 = shift_ode(L, c);
    Rec rec2 = ode_to_rec(L2);
    const std::size_t s2 = rec2.order();
    const u64 K2 = D + s2;
    if (K2 >= f.modulus()) throw Error(Error::Kind::Precondition, "seqterm", "prime too small for shifted solve");
    const std::size_t n_init2 = s2 + rec2.trivial_below;
    std::map<u64, u64> known2;
    std::uint64_t t3 = now_ns();
    std::vector<u64> head2 = companion_pow_mod(shift_spec(spec_, c), N, n_init2);
    std::uint64_t t4 = now_ns();
    tr.it_ns += t4 - t3;
    t2 += t4 - t3;
    for (u64 k : detect_problem_indices(rec2, K2)) {
      if (k >= n_init2) {
        throw Error(Error::Kind::Internal, "seqterm",
                    "recurrence at the ordinary point is singular at index " + std::to_string(k));
      }
      known2[k] = head2[k];
    }
    std::vector<u64> dvec = unroll(rec2, std::vector<u64>(head2.begin(), head2.begin() + s2), K2, known2);
    dvec.resize(D + 1);
    for (const auto& [k, v] : recover_coefficients(f, dvec, c, targets)) known[k] = v;
  }
  std::vector<u64> coef = unroll(rec, std::vector<u64>(head.begin(), head.begin() + s), K, known);
  for (u64 k = D + 1; k <= K; ++k) {
    if (coef[k] != 0) throw Error(Error::Kind::Mismatch, "unroll", "coefficients beyond the degree bound are nonzero");
  }
  coef.resize(D + 1);
  tr.ur_ns += now_ns() - t2;
  return Poly(f, std::move(coef));
}

Poly seq_term_ct(const CFiniteSpec& spec, u64 N, SeqTermTrace* trace) {
  struct Entry {
    u64 hash;
    CFiniteSpec spec;
    std::shared_ptr<TelescoperEngine> engine;
  };
  static std::mutex mu;
  static std::list<Entry> cache;
  constexpr std::size_t kCap = 16;
  const u64 h = spec_hash(spec);
  std::shared_ptr<TelescoperEngine> engine;
  {
    std::lock_guard<std::mutex> lock(mu);
    for (auto it = cache.begin(); it != cache.end(); ++it) {
      if (it->hash == h && it->spec == spec) {
        engine = it->engine;
        cache.splice(cache.begin(), cache, it);
        break;
      }
    }
  }
  if (!engine) {
    engine = std::make_shared<TelescoperEngine>(genfunc(spec));
    std::lock_guard<std::mutex> lock(mu);
    cache.push_front({h, spec, engine});
    if (cache.size() > kCap) cache.pop_back();
  }
  SeqTermSolver solver(spec, engine);
  return solver.term(N, trace);
}

}  // namespace polypow
